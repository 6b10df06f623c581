#pragma once

#include "obc/grat.hpp"

#include <map>
#include <string>
#include <vector>

namespace obc {

enum class Dir { Up, Down };

using Word = std::vector<Dir>;

std::string word_str(const Word& w);
Word word_parse(const std::string& s);

enum class GenKind {
    LCup,         // cup   : empty -> ud
    LCap,         // cap   : du -> empty
    UpCross,      // s     : uu -> uu
    BlackDot,     // x     : u -> u
    WhiteDot,     // c     : u -> u, odd
    RCup,         // rcup  : empty -> du
    RCap,         // rcap  : ud -> empty
    LCross,       // ls    : ud -> du
    RCross,       // rs    : du -> ud
    DownCross,    // ds    : dd -> dd
    DownBlackDot, // xd    : d -> d
    DownWhiteDot, // cd    : d -> d, odd
};

Word gen_src(GenKind g);
Word gen_dst(GenKind g);
int gen_parity(GenKind g);
std::string gen_name(GenKind g);
GenKind gen_from_name(const std::string& name);

/** One horizontal slice id_left (x) gen (x) id_right. */
struct Layer {
    Word left;
    GenKind gen;
    Word right;

    Word src() const;
    Word dst() const;
    bool operator==(const Layer& o) const = default;
    bool operator<(const Layer& o) const;
};

// composed bottom to top: stack[0] acts first
using Stack = std::vector<Layer>;

bool stack_composable(const Stack& s);
Word stack_src(const Stack& s, const Word& if_empty);
Word stack_dst(const Stack& s, const Word& if_empty);
int stack_black_count(const Stack& s);
int stack_parity(const Stack& s);

// replace each down black dot by the snake carrying an up black dot
Stack stack_expand_down_blacks(const Stack& s);

/** Linear combination of diagram stacks with a common source and target. */
struct Expr {
    Word src;
    Word dst;
    std::map<Stack, GRat> terms;

    void add_term(const Stack& s, const GRat& c);
    bool is_zero() const { return terms.empty(); }
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr scaled(const GRat& c) const;
    bool operator==(const Expr& o) const = default;
};

Expr expr_identity(const Word& w);
Expr expr_gen(GenKind g);
Expr expr_layer(const Word& left, GenKind g, const Word& right);
Expr expr_scalar(const GRat& c);
Expr expr_from_stack(const Stack& s);
Expr expr_zero(const Word& src, const Word& dst);

// counterclockwise circle carrying k black dots
Expr expr_bubble(int k);

Expr expr_compose(const Expr& f, const Expr& g);
Expr expr_tensor(const Expr& f, const Expr& g);

int black_degree(const Expr& e);
// 0 even, 1 odd; throws if terms disagree
int parity(const Expr& e);

} // namespace obc

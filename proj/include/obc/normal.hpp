#pragma once

#include "obc/bubble.hpp"
#include "obc/diagram.hpp"

#include <map>
#include <vector>

namespace obc {

/**
 * One strand of a normally ordered diagram. Flow enters at the in end
 * (an up letter at the bottom or a down letter at the top) and leaves at
 * the out end. White dots are kept modulo two at the out end, black dots
 * are counted at the in end.
 */
struct Strand {
    bool in_top = false;
    int in_pos = 0;
    bool out_top = false;
    int out_pos = 0;
    int cliff = 0;
    int dots = 0;
};

bool operator==(const Strand& a, const Strand& b);
bool operator<(const Strand& a, const Strand& b);

/** Decorated matching between boundary words, the summand of a normal form. */
struct NormalKey {
    Word src;
    Word dst;
    std::vector<Strand> strands;

    void canonicalize();
    int total_dots() const;
    int parity() const;
};

bool operator==(const NormalKey& a, const NormalKey& b);
bool operator<(const NormalKey& a, const NormalKey& b);

/** Sum of decorated matchings with bubble polynomial coefficients. */
struct NormalMorphism {
    Word src;
    Word dst;
    std::map<NormalKey, BubblePoly> terms;

    bool is_zero() const { return terms.empty(); }
};

bool operator==(const NormalMorphism& a, const NormalMorphism& b);

NormalKey identity_key(const Word& w);
NormalMorphism nm_identity(const Word& w);
NormalMorphism nm_zero(const Word& src, const Word& dst);
void nm_add_term(NormalMorphism& m, const NormalKey& k, const BubblePoly& p);
NormalMorphism nm_add(const NormalMorphism& a, const NormalMorphism& b);
NormalMorphism nm_scale(const NormalMorphism& m, const BubblePoly& c);

// canonical diagram of a key, a single stack with coefficient one
Expr realize(const NormalKey& k);

// full expansion with bubble factors drawn as loops at the right edge
Expr nm_to_expr(const NormalMorphism& m);

// value of a free floating loop: zero unless it carries no white dot and
// an odd number of black dots
BubblePoly eval_loop(bool clockwise, int whites, int blacks, int sign);

NormalMorphism normalize(const Expr& e);
NormalMorphism nm_compose(const NormalMorphism& f, const NormalMorphism& g);
NormalMorphism nm_tensor(const NormalMorphism& f, const NormalMorphism& g);

// largest black dot count over all summands, bubble degrees included
int black_degree(const NormalMorphism& m);

// correction terms picked up when a dotted loop moves right past one strand
std::vector<std::pair<Expr, GRat>> transport_corrections(bool clockwise, Dir shield,
                                                         const Word& left, const Word& right,
                                                         int dots, int whites);

std::vector<NormalKey> enumerate_keys(const Word& src, const Word& dst, int max_dots_total,
                                      int per_strand_bound);

// number of basis elements of total black degree at most k
long dim_filtered(const Word& src, const Word& dst, int k);

} // namespace obc

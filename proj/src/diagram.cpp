#include "obc/diagram.hpp"

#include <stdexcept>

namespace obc {

std::string word_str(const Word& w) {
    std::string s;
    for (Dir d : w) s += (d == Dir::Up ? 'u' : 'd');
    return s;
}

Word word_parse(const std::string& s) {
    Word w;
    for (char ch : s) {
        if (ch == 'u') {
            w.push_back(Dir::Up);
        } else if (ch == 'd') {
            w.push_back(Dir::Down);
        } else {
            throw std::invalid_argument(std::string("bad direction character '") + ch + "'");
        }
    }
    return w;
}

namespace {

struct GenInfo {
    const char* name;
    const char* src;
    const char* dst;
    int parity;
};

const GenInfo gen_table[] = {
    {"cup", "", "ud", 0},  {"cap", "du", "", 0},  {"s", "uu", "uu", 0},
    {"x", "u", "u", 0},    {"c", "u", "u", 1},    {"rcup", "", "du", 0},
    {"rcap", "ud", "", 0}, {"ls", "ud", "du", 0}, {"rs", "du", "ud", 0},
    {"ds", "dd", "dd", 0}, {"xd", "d", "d", 0},   {"cd", "d", "d", 1},
};

const GenInfo& info(GenKind g) {
    return gen_table[static_cast<int>(g)];
}

} // namespace

Word gen_src(GenKind g) {
    return word_parse(info(g).src);
}

Word gen_dst(GenKind g) {
    return word_parse(info(g).dst);
}

int gen_parity(GenKind g) {
    return info(g).parity;
}

std::string gen_name(GenKind g) {
    return info(g).name;
}

GenKind gen_from_name(const std::string& name) {
    for (int i = 0; i < 12; ++i) {
        if (name == gen_table[i].name) return static_cast<GenKind>(i);
    }
    throw std::invalid_argument("unknown generator name '" + name + "'");
}

namespace {

Word concat3(const Word& a, const Word& b, const Word& c) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), c.begin(), c.end());
    return w;
}

} // namespace

Word Layer::src() const {
    return concat3(left, gen_src(gen), right);
}

Word Layer::dst() const {
    return concat3(left, gen_dst(gen), right);
}

bool Layer::operator<(const Layer& o) const {
    if (left != o.left) return left < o.left;
    if (gen != o.gen) return gen < o.gen;
    return right < o.right;
}

bool stack_composable(const Stack& s) {
    for (size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i].dst() != s[i + 1].src()) return false;
    }
    return true;
}

Word stack_src(const Stack& s, const Word& if_empty) {
    return s.empty() ? if_empty : s.front().src();
}

Word stack_dst(const Stack& s, const Word& if_empty) {
    return s.empty() ? if_empty : s.back().dst();
}

int stack_black_count(const Stack& s) {
    int n = 0;
    for (const Layer& l : s) {
        if (l.gen == GenKind::BlackDot || l.gen == GenKind::DownBlackDot) ++n;
    }
    return n;
}

int stack_parity(const Stack& s) {
    int p = 0;
    for (const Layer& l : s) p ^= gen_parity(l.gen);
    return p;
}

Stack stack_expand_down_blacks(const Stack& s) {
    Stack out;
    for (const Layer& l : s) {
        if (l.gen != GenKind::DownBlackDot) {
            out.push_back(l);
            continue;
        }
        Word ld = l.left;
        ld.push_back(Dir::Down);
        Word dr;
        dr.push_back(Dir::Down);
        dr.insert(dr.end(), l.right.begin(), l.right.end());
        out.push_back(Layer{ld, GenKind::LCup, l.right});
        out.push_back(Layer{ld, GenKind::BlackDot, dr});
        out.push_back(Layer{l.left, GenKind::LCap, dr});
    }
    return out;
}

void Expr::add_term(const Stack& s, const GRat& c) {
    auto it = terms.find(s);
    if (it == terms.end()) {
        if (!c.is_zero()) terms[s] = c;
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

Expr Expr::operator+(const Expr& o) const {
    if (src != o.src || dst != o.dst)
        throw std::invalid_argument("sum type mismatch: \"" + word_str(src) + "\"->\"" +
                                    word_str(dst) + "\" vs \"" + word_str(o.src) + "\"->\"" +
                                    word_str(o.dst) + "\"");
    Expr r = *this;
    for (const auto& [s, c] : o.terms) r.add_term(s, c);
    return r;
}

Expr Expr::operator-(const Expr& o) const {
    return *this + o.scaled(GRat(-1));
}

Expr Expr::scaled(const GRat& c) const {
    Expr r;
    r.src = src;
    r.dst = dst;
    if (c.is_zero()) return r;
    for (const auto& [s, co] : terms) r.terms[s] = co * c;
    return r;
}

Expr expr_identity(const Word& w) {
    Expr e;
    e.src = w;
    e.dst = w;
    e.terms[{}] = GRat(1);
    return e;
}

Expr expr_layer(const Word& left, GenKind g, const Word& right) {
    Expr e;
    Layer l{left, g, right};
    e.src = l.src();
    e.dst = l.dst();
    e.terms[{l}] = GRat(1);
    return e;
}

Expr expr_gen(GenKind g) {
    return expr_layer({}, g, {});
}

Expr expr_scalar(const GRat& c) {
    Expr e;
    if (!c.is_zero()) e.terms[{}] = c;
    return e;
}

Expr expr_from_stack(const Stack& s) {
    if (s.empty()) throw std::invalid_argument("empty stack needs a word; use expr_identity");
    if (!stack_composable(s)) throw std::invalid_argument("layers do not compose");
    Expr e;
    e.src = s.front().src();
    e.dst = s.back().dst();
    e.terms[s] = GRat(1);
    return e;
}

Expr expr_zero(const Word& src, const Word& dst) {
    Expr e;
    e.src = src;
    e.dst = dst;
    return e;
}

Expr expr_bubble(int k) {
    if (k < 0) throw std::invalid_argument("bubble dot count must be non-negative");
    Expr e = expr_gen(GenKind::RCup);
    for (int j = 0; j < k; ++j)
        e = expr_compose(expr_layer(word_parse("d"), GenKind::BlackDot, {}), e);
    return expr_compose(expr_gen(GenKind::LCap), e);
}

Expr expr_compose(const Expr& f, const Expr& g) {
    if (f.src != g.dst)
        throw std::invalid_argument("compose type mismatch: lower output \"" + word_str(g.dst) +
                                    "\" vs upper input \"" + word_str(f.src) + "\"");
    Expr r;
    r.src = g.src;
    r.dst = f.dst;
    for (const auto& [sg, cg] : g.terms) {
        for (const auto& [sf, cf] : f.terms) {
            Stack s = sg;
            s.insert(s.end(), sf.begin(), sf.end());
            r.add_term(s, cg * cf);
        }
    }
    return r;
}

Expr expr_tensor(const Expr& f, const Expr& g) {
    Expr r;
    r.src = f.src;
    r.src.insert(r.src.end(), g.src.begin(), g.src.end());
    r.dst = f.dst;
    r.dst.insert(r.dst.end(), g.dst.begin(), g.dst.end());
    for (const auto& [sf, cf] : f.terms) {
        for (const auto& [sg, cg] : g.terms) {
            Stack s;
            s.reserve(sf.size() + sg.size());
            // (f (x) id) stacked above (id (x) g)
            for (const Layer& l : sg) {
                Word left = f.src;
                left.insert(left.end(), l.left.begin(), l.left.end());
                s.push_back(Layer{left, l.gen, l.right});
            }
            for (const Layer& l : sf) {
                Word right = l.right;
                right.insert(right.end(), g.dst.begin(), g.dst.end());
                s.push_back(Layer{l.left, l.gen, right});
            }
            r.add_term(s, cf * cg);
        }
    }
    return r;
}

int black_degree(const Expr& e) {
    int d = 0;
    for (const auto& [s, c] : e.terms) d = std::max(d, stack_black_count(s));
    return d;
}

int parity(const Expr& e) {
    if (e.terms.empty()) return 0;
    int p = stack_parity(e.terms.begin()->first);
    for (const auto& [s, c] : e.terms) {
        if (stack_parity(s) != p)
            throw std::invalid_argument("expression mixes even and odd terms");
    }
    return p;
}

} // namespace obc

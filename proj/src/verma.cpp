#include "obc/verma.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace obc {

int lowering_index(int n, int i, int j) {
    if (i <= j || i > n || j < 1) throw std::invalid_argument("not a lowering pair");
    return (i - 1) * (i - 2) / 2 + (j - 1);
}

std::pair<int, int> lowering_pair(int n, int t) {
    for (int i = 2; i <= n; ++i) {
        int base = (i - 1) * (i - 2) / 2;
        if (t < base + i - 1) return {i, t - base + 1};
    }
    throw std::invalid_argument("lowering index out of range");
}

int tail_degree(const SymMonomial& m) {
    int s = 0;
    for (int x : m) s += x;
    return s;
}

int VermaKey::lowering_total() const {
    int s = 0;
    for (int x : a) s += x;
    for (int x : b) s += x;
    return s;
}

int VermaKey::parity() const {
    int p = 0;
    for (int x : b) p ^= x & 1;
    for (int x : c) p ^= x & 1;
    return p;
}

bool VermaKey::operator==(const VermaKey& o) const { return a == o.a && b == o.b && c == o.c; }

bool VermaKey::operator<(const VermaKey& o) const {
    return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
}

VermaKey verma_unit_key(int n) {
    int nn = n * (n - 1) / 2;
    return VermaKey{std::vector<int>(nn, 0), std::vector<int>(nn, 0), std::vector<int>(n, 0)};
}

VermaVector verma_unit(int n) {
    VermaVector v;
    v.n = n;
    v.terms[verma_unit_key(n)] = SymPoly(GRat(1));
    return v;
}

VermaVector verma_zero(int n) {
    VermaVector v;
    v.n = n;
    return v;
}

void verma_add_term(VermaVector& v, const VermaKey& k, const SymPoly& p) {
    if (p.is_zero()) return;
    auto it = v.terms.find(k);
    if (it == v.terms.end()) {
        v.terms[k] = p;
        return;
    }
    it->second = it->second + p;
    if (it->second.is_zero()) v.terms.erase(it);
}

VermaVector verma_add(const VermaVector& x, const VermaVector& y) {
    if (x.n != y.n) throw std::invalid_argument("rank mismatch");
    VermaVector out = x;
    out.truncated = x.truncated || y.truncated;
    for (const auto& [k, p] : y.terms) verma_add_term(out, k, p);
    return out;
}

VermaVector verma_scale(const VermaVector& v, const GRat& c) {
    VermaVector out;
    out.n = v.n;
    out.truncated = v.truncated;
    if (c.is_zero()) return out;
    for (const auto& [k, p] : v.terms) out.terms[k] = p.scaled(c);
    return out;
}

namespace {

int poly_top_degree(const SymPoly& p) {
    int d = -1;
    for (const auto& [m, c] : p.terms()) d = std::max(d, tail_degree(m));
    return d;
}

SymPoly poly_degree_part(const SymPoly& p, int d) {
    SymPoly out;
    for (const auto& [m, c] : p.terms()) {
        if (tail_degree(m) == d) out.add_term(m, c);
    }
    return out;
}

SymPoly poly_truncate(const SymPoly& p, int maxdeg, bool& hit) {
    SymPoly out;
    for (const auto& [m, c] : p.terms()) {
        if (tail_degree(m) > maxdeg) {
            hit = true;
            continue;
        }
        out.add_term(m, c);
    }
    return out;
}

} // namespace

int verma_grading(const VermaVector& v) {
    int d = -1;
    for (const auto& [k, p] : v.terms) d = std::max(d, poly_top_degree(p));
    return d;
}

VermaVector top_component(const VermaVector& v) {
    VermaVector out;
    out.n = v.n;
    out.truncated = v.truncated;
    int d = verma_grading(v);
    if (d < 0) return out;
    for (const auto& [k, p] : v.terms) {
        SymPoly q = poly_degree_part(p, d);
        if (!q.is_zero()) out.terms[k] = q;
    }
    return out;
}

std::string verma_dump(const VermaVector& v) {
    std::ostringstream os;
    os << "verma n=" << v.n << (v.truncated ? " truncated" : "") << "\n";
    for (const auto& [k, p] : v.terms) {
        os << "  ";
        bool any = false;
        for (size_t t = 0; t < k.a.size(); ++t) {
            if (k.a[t] == 0) continue;
            auto [i, j] = lowering_pair(v.n, static_cast<int>(t));
            os << "f(" << i << "," << j << ")";
            if (k.a[t] > 1) os << "^" << k.a[t];
            os << " ";
            any = true;
        }
        for (size_t t = 0; t < k.b.size(); ++t) {
            if (!k.b[t]) continue;
            auto [i, j] = lowering_pair(v.n, static_cast<int>(t));
            os << "fbar(" << i << "," << j << ") ";
            any = true;
        }
        for (size_t t = 0; t < k.c.size(); ++t) {
            if (!k.c[t]) continue;
            os << "hbar(" << t + 1 << ") ";
            any = true;
        }
        if (!any) os << "1 ";
        os << ":: " << sym_to_string(p) << "\n";
    }
    return os.str();
}

namespace {

using BracketTable = std::map<std::tuple<int, QGen, QGen>, std::vector<std::pair<QGen, GRat>>>;
using ActTable = std::map<std::pair<QGen, VermaKey>, std::map<VermaKey, SymPoly>>;

BracketTable& bracket_cache() {
    static BracketTable t;
    return t;
}

ActTable& act_cache() {
    static ActTable t;
    return t;
}

// PBW slot of a lowering generator: even pairs first, then odd pairs
int pbw_pos(int n, const QGen& g) { return (g.eps ? n * (n - 1) / 2 : 0) + lowering_index(n, g.i, g.j); }

struct RewriteState {
    GRat coeff;
    std::vector<QGen> word;
    std::vector<int> c;
    SymMonomial tail;
};

SymMonomial mono_times_h(const SymMonomial& m, int i) {
    SymMonomial out = m;
    if (static_cast<int>(out.size()) < i) out.resize(i, 0);
    out[i - 1] += 1;
    return out;
}

// action of a raising or Cartan generator on the Clifford-polynomial core
std::vector<RewriteState> core_apply(const QGen& g, const RewriteState& s) {
    if (g.i < g.j) return {};
    if (g.i != g.j) throw std::invalid_argument("core_apply expects a raising or Cartan generator");
    RewriteState out = s;
    if (g.eps == 0) {
        out.tail = mono_times_h(s.tail, g.i);
        return {out};
    }
    int below = 0;
    for (int k = 0; k + 1 < g.i; ++k) below ^= s.c[k] & 1;
    if (below) out.coeff = -out.coeff;
    if (s.c[g.i - 1]) {
        out.c[g.i - 1] = 0;
        out.tail = mono_times_h(s.tail, g.i);
    } else {
        out.c[g.i - 1] = 1;
    }
    return {out};
}

// straightened left action of one generator on one basis symbol, tail left off
const std::map<VermaKey, SymPoly>& act_on_key(int n, const QGen& g, const VermaKey& key) {
    auto memo = std::make_pair(g, key);
    auto it = act_cache().find(memo);
    if (it != act_cache().end()) return it->second;

    std::vector<RewriteState> work;
    RewriteState init;
    init.coeff = GRat(1);
    init.word.push_back(g);
    for (size_t t = 0; t < key.a.size(); ++t) {
        auto [i, j] = lowering_pair(n, static_cast<int>(t));
        for (int r = 0; r < key.a[t]; ++r) init.word.push_back(QGen{false, i, j, 0});
    }
    for (size_t t = 0; t < key.b.size(); ++t) {
        if (!key.b[t]) continue;
        auto [i, j] = lowering_pair(n, static_cast<int>(t));
        init.word.push_back(QGen{false, i, j, 1});
    }
    init.c = key.c;
    work.push_back(std::move(init));

    std::map<VermaKey, SymPoly> out;
    while (!work.empty()) {
        RewriteState s = std::move(work.back());
        work.pop_back();
        int len = static_cast<int>(s.word.size());
        int defect = -1;
        bool dead = false;
        for (int t = len - 1; t >= 0; --t) {
            const QGen& w = s.word[t];
            if (w.i <= w.j) {
                defect = t;
                break;
            }
            if (t + 1 < len) {
                int p0 = pbw_pos(n, w);
                int p1 = pbw_pos(n, s.word[t + 1]);
                if (p0 > p1) {
                    defect = t;
                    break;
                }
                if (p0 == p1 && w.eps == 1) {
                    dead = true;
                    break;
                }
            }
        }
        if (dead) continue;
        if (defect < 0) {
            VermaKey k = verma_unit_key(n);
            for (const QGen& w : s.word) {
                int t = lowering_index(n, w.i, w.j);
                if (w.eps == 0)
                    k.a[t] += 1;
                else
                    k.b[t] = 1;
            }
            k.c = s.c;
            SymPoly p;
            p.add_term(s.tail, s.coeff);
            auto oit = out.find(k);
            if (oit == out.end()) {
                out[k] = p;
            } else {
                oit->second = oit->second + p;
                if (oit->second.is_zero()) out.erase(oit);
            }
            continue;
        }
        const QGen g1 = s.word[defect];
        if (defect == len - 1) {
            RewriteState base = s;
            base.word.pop_back();
            for (RewriteState& r : core_apply(g1, base)) work.push_back(std::move(r));
            continue;
        }
        const QGen g2 = s.word[defect + 1];
        RewriteState swapped = s;
        std::swap(swapped.word[defect], swapped.word[defect + 1]);
        if (g1.eps && g2.eps) swapped.coeff = -swapped.coeff;
        work.push_back(std::move(swapped));
        for (const auto& [gk, ck] : superbracket(n, g1, g2)) {
            RewriteState merged = s;
            merged.coeff = s.coeff * ck;
            merged.word.erase(merged.word.begin() + defect + 1);
            merged.word[defect] = gk;
            work.push_back(std::move(merged));
        }
    }
    return act_cache()[memo] = std::move(out);
}

} // namespace

std::vector<std::pair<QGen, GRat>> superbracket(int n, const QGen& g1, const QGen& g2) {
    if (g1.tilde || g2.tilde) throw std::invalid_argument("superbracket expects plain generators");
    auto memo = std::make_tuple(n, g1, g2);
    auto it = bracket_cache().find(memo);
    if (it != bracket_cache().end()) return it->second;
    QnContext ctx(n);
    SuperMatrix m1 = gen_matrix(ctx, g1);
    SuperMatrix m2 = gen_matrix(ctx, g2);
    GRat sign = (g1.eps && g2.eps) ? GRat(-1) : GRat(1);
    SuperMatrix m = m1 * m2 - (m2 * m1).scaled(sign);
    std::vector<std::pair<QGen, GRat>> out;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            GRat c0 = m.get(i - 1, j - 1);
            GRat c1 = m.get(n + i - 1, j - 1);
            if (m.get(n + i - 1, n + j - 1) != c0 || m.get(i - 1, n + j - 1) != c1)
                throw std::runtime_error("bracket lies outside the generator span");
            if (!c0.is_zero()) out.push_back({QGen{false, i, j, 0}, c0});
            if (!c1.is_zero()) out.push_back({QGen{false, i, j, 1}, c1});
        }
    }
    return bracket_cache()[memo] = std::move(out);
}

void verma_cache_clear() {
    bracket_cache().clear();
    act_cache().clear();
}

VermaVector verma_act(const QGen& g, const VermaVector& v, const Truncation& t) {
    if (g.tilde) throw std::invalid_argument("verma_act expects plain generators");
    if (g.i < 1 || g.i > v.n || g.j < 1 || g.j > v.n)
        throw std::invalid_argument("generator index out of range");
    VermaVector out;
    out.n = v.n;
    out.truncated = v.truncated;
    for (const auto& [key, poly] : v.terms) {
        for (const auto& [k2, p2] : act_on_key(v.n, g, key)) {
            if (k2.lowering_total() > t.lowering) {
                out.truncated = true;
                continue;
            }
            SymPoly q = poly_truncate(p2 * poly, t.degree, out.truncated);
            verma_add_term(out, k2, q);
        }
    }
    return out;
}

long vm_flat(const QnContext& ctx, const std::vector<int>& indices) {
    long flat = 0;
    for (int x : indices) {
        if (x < 0 || x >= ctx.dim()) throw std::invalid_argument("tensor index out of range");
        flat = flat * ctx.dim() + x;
    }
    return flat;
}

std::vector<int> vm_digits(const QnContext& ctx, size_t width, long flat) {
    std::vector<int> d(width, 0);
    for (size_t t = width; t-- > 0;) {
        d[t] = static_cast<int>(flat % ctx.dim());
        flat /= ctx.dim();
    }
    return d;
}

VMVector vm_unit(const QnContext& ctx, const std::vector<int>& indices) {
    VMVector v;
    v.n = ctx.n;
    v.word = Word(indices.size(), Dir::Up);
    v.terms[{vm_flat(ctx, indices), verma_unit_key(ctx.n)}] = SymPoly(GRat(1));
    return v;
}

VMVector vm_add(const VMVector& x, const VMVector& y) {
    if (x.n != y.n || x.word != y.word) throw std::invalid_argument("vm shape mismatch");
    VMVector out = x;
    out.truncated = x.truncated || y.truncated;
    for (const auto& [k, p] : y.terms) {
        auto it = out.terms.find(k);
        if (it == out.terms.end()) {
            out.terms[k] = p;
            continue;
        }
        it->second = it->second + p;
        if (it->second.is_zero()) out.terms.erase(it);
    }
    return out;
}

VMVector vm_scale(const VMVector& v, const GRat& c) {
    VMVector out;
    out.n = v.n;
    out.word = v.word;
    out.truncated = v.truncated;
    if (c.is_zero()) return out;
    for (const auto& [k, p] : v.terms) out.terms[k] = p.scaled(c);
    return out;
}

int vm_grading(const VMVector& v) {
    int d = -1;
    for (const auto& [k, p] : v.terms) d = std::max(d, poly_top_degree(p));
    return d;
}

VMVector top_component(const VMVector& v) {
    VMVector out;
    out.n = v.n;
    out.word = v.word;
    out.truncated = v.truncated;
    int d = vm_grading(v);
    if (d < 0) return out;
    for (const auto& [k, p] : v.terms) {
        SymPoly q = poly_degree_part(p, d);
        if (!q.is_zero()) out.terms[k] = q;
    }
    return out;
}

namespace {

using VMTerms = std::map<std::pair<long, VermaKey>, SymPoly>;

void vm_accum(VMTerms& terms, long flat, const VermaKey& k, const SymPoly& p) {
    if (p.is_zero()) return;
    auto key = std::make_pair(flat, k);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms[key] = p;
        return;
    }
    it->second = it->second + p;
    if (it->second.is_zero()) terms.erase(it);
}

// matrix action on the tensor part, Verma symbols untouched
VMTerms vm_matrix_step(const SuperMatrix& m, const VMTerms& cur) {
    std::map<long, std::vector<std::pair<long, GRat>>> cols;
    for (const auto& [r, row] : m.rows) {
        for (const auto& [c, val] : row) cols[c].push_back({r, val});
    }
    VMTerms next;
    for (const auto& [fk, poly] : cur) {
        auto cit = cols.find(fk.first);
        if (cit == cols.end()) continue;
        for (const auto& [r, val] : cit->second) vm_accum(next, r, fk.second, poly.scaled(val));
    }
    return next;
}

// Casimir coupling of the dot strand with the Verma factor
VMTerms vm_module_step(const QnContext& ctx, const Layer& l, const VMTerms& cur,
                       const Truncation& t, bool& truncated) {
    int n = ctx.n;
    size_t p = l.left.size();
    size_t width = l.left.size() + 1 + l.right.size();
    VMTerms next;
    for (const auto& [fk, poly] : cur) {
        std::vector<int> digits = vm_digits(ctx, width, fk.first);
        int parsum = 0;
        for (size_t q = p; q < width; ++q) parsum ^= digits[q] >= n ? 1 : 0;
        bool bar = digits[p] >= n;
        int j = digits[p] % n + 1;
        for (int eps = 0; eps < 2; ++eps) {
            GRat coef = bar ? GRat(-1) : GRat(1);
            if (eps && parsum) coef = -coef;
            for (int i = 1; i <= n; ++i) {
                std::vector<int> nd = digits;
                nd[p] = (i - 1) + ((eps == 0) == bar ? n : 0);
                long flat = vm_flat(ctx, nd);
                for (const auto& [k2, p2] : act_on_key(n, QGen{false, j, i, eps}, fk.second)) {
                    if (k2.lowering_total() > t.lowering) {
                        truncated = true;
                        continue;
                    }
                    SymPoly q = poly_truncate((p2 * poly).scaled(coef), t.degree, truncated);
                    vm_accum(next, flat, k2, q);
                }
            }
        }
    }
    return next;
}

} // namespace

VMVector psim_eval(const QnContext& ctx, const Expr& e, const VMVector& v, const Truncation& t) {
    if (v.n != ctx.n) throw std::invalid_argument("rank mismatch");
    if (v.word != e.src) throw std::invalid_argument("input word does not match the expression");
    VMVector out;
    out.n = ctx.n;
    out.word = e.dst;
    out.truncated = v.truncated;
    for (const auto& [raw, coeff] : e.terms) {
        Stack s = stack_expand_down_blacks(raw);
        VMTerms cur = v.terms;
        for (const Layer& l : s) {
            VMTerms next = vm_matrix_step(layer_matrix(ctx, l), cur);
            if (l.gen == GenKind::BlackDot) {
                VMTerms coupled = vm_module_step(ctx, l, cur, t, out.truncated);
                for (const auto& [fk, p] : coupled) vm_accum(next, fk.first, fk.second, p);
            }
            cur = std::move(next);
        }
        for (const auto& [fk, p] : cur) vm_accum(out.terms, fk.first, fk.second, p.scaled(coeff));
    }
    return out;
}

} // namespace obc

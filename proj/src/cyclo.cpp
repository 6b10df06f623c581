#include "obc/cyclo.hpp"

#include "obc/sergeev.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace obc {

PolyZ CycloData::zprime_coeff(int r) const {
    if (r < 0 || r > half()) return PolyZ();
    if (r == 0) return PolyZ(GRat(1));
    if (formal) return PolyZ::generator(r);
    return PolyZ(zprime[r]);
}

namespace {

void validate_coeffs(int ell, const std::vector<GRat>& z, const char* which) {
    if (ell < 0) throw std::invalid_argument("the polynomial degree must not be negative");
    if ((int)z.size() != ell / 2 + 1)
        throw std::invalid_argument(std::string(which) + " needs one entry per even gap");
    if (z[0] != GRat(1)) throw std::invalid_argument(std::string(which) + " must be monic");
}

} // namespace

std::pair<std::vector<PolyZ>, std::vector<PolyZ>> delta_series(const CycloData& data,
                                                               int precision) {
    if (precision < 0) throw std::invalid_argument("series precision must not be negative");
    int h = data.half();
    std::vector<PolyZ> del(precision + 1), delp(precision + 1);
    del[0] = PolyZ(GRat(1));
    delp[0] = PolyZ(GRat(-1));
    for (int r = 1; r <= precision; ++r) {
        PolyZ d = data.zprime_coeff(r);
        for (int s = 1; s <= std::min(r, h); ++s) d = d - del[r - s].scaled(data.z[s]);
        del[r] = d;
        PolyZ dp = r <= h ? PolyZ(-data.z[r]) : PolyZ();
        for (int s = 1; s <= std::min(r, h); ++s) dp = dp - data.zprime_coeff(s) * delp[r - s];
        delp[r] = dp;
    }
    return {del, delp};
}

CycloData cyclo_data(int ell, const std::vector<GRat>& z, const std::vector<GRat>& zprime,
                     int precision) {
    validate_coeffs(ell, z, "the first polynomial");
    validate_coeffs(ell, zprime, "the second polynomial");
    CycloData data;
    data.ell = ell;
    data.z = z;
    data.zprime = zprime;
    auto series = delta_series(data, std::max(precision, data.half()));
    data.delta = series.first;
    data.delta_prime = series.second;
    return data;
}

CycloData cyclo_data_formal(int ell, const std::vector<GRat>& z, int precision) {
    validate_coeffs(ell, z, "the first polynomial");
    CycloData data;
    data.ell = ell;
    data.z = z;
    data.formal = true;
    auto series = delta_series(data, std::max(precision, data.half()));
    data.delta = series.first;
    data.delta_prime = series.second;
    return data;
}

std::vector<CycloCheck> check_e1_e2(const CycloData& data, int precision) {
    if (precision < data.half())
        throw std::invalid_argument("the convolution checks need at least half the degree");
    auto [del, delp] = delta_series(data, precision);
    std::vector<CycloCheck> out;
    out.push_back({"leading series value is one", del[0] == PolyZ(GRat(1))});
    out.push_back({"leading mirrored value is minus one", delp[0] == PolyZ(GRat(-1))});
    bool shrt = true, lng = true;
    for (int r = 0; r <= precision; ++r) {
        PolyZ conv;
        for (int s = 0; s <= std::min(r, data.half()); ++s) conv += del[r - s].scaled(data.z[s]);
        if (r <= data.half()) {
            shrt = shrt && conv == data.zprime_coeff(r);
        } else {
            lng = lng && conv.is_zero();
        }
    }
    out.push_back({"short convolutions return the second coefficients", shrt});
    out.push_back({"long convolutions vanish", lng});
    bool mshrt = true, mlng = true;
    for (int r = 0; r <= precision; ++r) {
        PolyZ conv;
        for (int s = 0; s <= std::min(r, data.half()); ++s)
            conv += data.zprime_coeff(s) * delp[r - s];
        PolyZ want = r <= data.half() ? PolyZ(-data.z[r]) : PolyZ();
        if (r <= data.half()) {
            mshrt = mshrt && conv == want;
        } else {
            mlng = mlng && conv.is_zero();
        }
    }
    out.push_back({"short mirrored convolutions return the first coefficients", mshrt});
    out.push_back({"long mirrored convolutions vanish", mlng});
    bool prod = true;
    for (int t = 0; t <= precision; ++t) {
        PolyZ conv;
        for (int r = 0; r <= t; ++r) conv += del[r] * delp[t - r];
        prod = prod && conv == (t == 0 ? PolyZ(GRat(-1)) : PolyZ());
    }
    out.push_back({"the two series multiply to minus one", prod});
    return out;
}

bool operator==(const CycloMorphism& a, const CycloMorphism& b) {
    return a.src == b.src && a.dst == b.dst && a.terms == b.terms;
}

void cm_add_term(CycloMorphism& m, const NormalKey& k, const PolyZ& c) {
    auto it = m.terms.find(k);
    if (it == m.terms.end()) {
        if (!c.is_zero()) m.terms.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) m.terms.erase(it);
}

CycloMorphism cm_add(const CycloMorphism& a, const CycloMorphism& b) {
    if (a.src != b.src || a.dst != b.dst)
        throw std::invalid_argument("cannot add morphisms with different boundaries");
    CycloMorphism out = a;
    for (const auto& [k, c] : b.terms) cm_add_term(out, k, c);
    return out;
}

CycloMorphism cm_scale(const CycloMorphism& m, const PolyZ& c) {
    CycloMorphism out;
    out.src = m.src;
    out.dst = m.dst;
    for (const auto& [k, v] : m.terms) {
        PolyZ p = v * c;
        if (!p.is_zero()) out.terms.emplace(k, p);
    }
    return out;
}

CycloMorphism cm_eval(const CycloMorphism& m, const std::vector<GRat>& values) {
    CycloMorphism out;
    out.src = m.src;
    out.dst = m.dst;
    for (const auto& [k, v] : m.terms) {
        GRat c = polyz_eval(v, values);
        if (!c.is_zero()) out.terms.emplace(k, PolyZ(c));
    }
    return out;
}

namespace {

ZMonomial zmono_mul(const ZMonomial& x, const ZMonomial& y) {
    ZMonomial m(std::max(x.size(), y.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) m[i] += x[i];
    for (size_t i = 0; i < y.size(); ++i) m[i] += y[i];
    return m;
}

PolyZ zmono_poly(const ZMonomial& m) {
    PolyZ p;
    p.add_term(m, GRat(1));
    return p;
}

void map_add(std::map<NormalKey, PolyZ>& terms, const NormalKey& k, const PolyZ& c) {
    auto it = terms.find(k);
    if (it == terms.end()) {
        if (!c.is_zero()) terms.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

std::map<ZMonomial, NormalMorphism> decompose_by_zmono(const Word& src, const Word& dst,
                                                       const std::map<NormalKey, PolyZ>& terms) {
    std::map<ZMonomial, NormalMorphism> out;
    for (const auto& [k, p] : terms) {
        for (const auto& [mz, c] : p.terms()) {
            auto it = out.try_emplace(mz, nm_zero(src, dst)).first;
            nm_add_term(it->second, k, BubblePoly(c));
        }
    }
    return out;
}

/** Working state of one reduction run: rules, series values, cached moves. */
struct ReduceCtx {
    const CycloData& data;
    CycloRules rules = CycloRules::Both;
    std::vector<PolyZ> values;
    std::map<std::tuple<Word, int, bool>, std::vector<std::pair<PolyZ, Expr>>> repl_cache;
};

// value of the counterclockwise bubble with 2r-1 dots for r = 0..rmax; the
// down sided mode solves for them through the clockwise expansion instead
void grow_bubble_values(ReduceCtx& ctx, int rmax) {
    if ((int)ctx.values.size() > rmax) return;
    if (ctx.rules == CycloRules::DownOnly) {
        auto delp = delta_series(ctx.data, rmax).second;
        std::vector<PolyZ> v(rmax + 1);
        v[0] = PolyZ(GRat(1));
        for (int r = 1; r <= rmax; ++r) {
            BubblePoly cw = delta_prime(2 * r - 1);
            PolyZ acc = delp[r];
            GRat lead;
            bool found = false;
            for (const auto& [bm, c] : cw.terms()) {
                if (bm == BubbleMonomial{2 * r - 1}) {
                    lead = c;
                    found = true;
                    continue;
                }
                PolyZ prod(c);
                for (int idx : bm) {
                    int rr = (idx + 1) / 2;
                    if (rr >= r)
                        throw std::runtime_error("clockwise bubble expansion is not triangular");
                    prod = prod * v[rr];
                }
                acc = acc - prod;
            }
            if (!found || !(lead == GRat(1) || lead == GRat(-1)))
                throw std::runtime_error("clockwise bubble misses its unit leading term");
            v[r] = acc.scaled(lead);
        }
        ctx.values = std::move(v);
    } else {
        ctx.values = delta_series(ctx.data, rmax).first;
    }
}

PolyZ ctx_specialize(ReduceCtx& ctx, const BubblePoly& p) {
    PolyZ out;
    for (const auto& [bm, c] : p.terms()) {
        int need = bm.empty() ? 0 : (bm.back() + 1) / 2;
        grow_bubble_values(ctx, need);
        PolyZ t(c);
        for (int idx : bm) t = t * ctx.values[(idx + 1) / 2];
        out += t;
    }
    return out;
}

GenKind cross_for(Dir a, Dir b) {
    if (a == Dir::Up) return b == Dir::Up ? GenKind::UpCross : GenKind::LCross;
    return b == Dir::Up ? GenKind::RCross : GenKind::DownCross;
}

struct MovedStrand {
    Expr out;
    Expr back;
    Word moved;
};

// crossings carrying the letter at position p to the back of the word and home
MovedStrand move_to_back(const Word& w, int p) {
    Word cur = w;
    Expr fwd = expr_identity(w);
    for (int q = p; q + 1 < (int)w.size(); ++q) {
        Word left(cur.begin(), cur.begin() + q);
        Word right(cur.begin() + q + 2, cur.end());
        fwd = expr_compose(expr_layer(left, cross_for(cur[q], cur[q + 1]), right), fwd);
        std::swap(cur[q], cur[q + 1]);
    }
    Word moved = cur;
    Expr back = expr_identity(moved);
    for (int q = (int)w.size() - 2; q >= p; --q) {
        Word left(cur.begin(), cur.begin() + q);
        Word right(cur.begin() + q + 2, cur.end());
        back = expr_compose(expr_layer(left, cross_for(cur[q], cur[q + 1]), right), back);
        std::swap(cur[q], cur[q + 1]);
    }
    return {fwd, back, moved};
}

// replacement for a block of ell dots at the in end of the strand entering at
// position p: carry the block to the right edge, apply the defining polynomial
// there, and subtract the corrections the carrying produced
const std::vector<std::pair<PolyZ, Expr>>& strand_replacement(ReduceCtx& ctx, const Word& w,
                                                              int p, bool down) {
    auto key = std::make_tuple(w, p, down);
    auto hit = ctx.repl_cache.find(key);
    if (hit != ctx.repl_cache.end()) return hit->second;

    int ell = ctx.data.ell;
    MovedStrand mv = move_to_back(w, p);
    GenKind dotk = down ? GenKind::DownBlackDot : GenKind::BlackDot;
    Word whisk(mv.moved.begin(), mv.moved.end() - 1);
    auto detour = [&](int j) {
        Expr d = expr_identity(mv.moved);
        for (int t = 0; t < j; ++t) d = expr_compose(expr_layer(whisk, dotk, {}), d);
        return expr_compose(mv.back, expr_compose(d, mv.out));
    };

    std::vector<std::pair<PolyZ, Expr>> pieces;
    for (int k = 1; k <= ctx.data.half(); ++k) {
        PolyZ zc = down ? ctx.data.zprime_coeff(k) : PolyZ(ctx.data.z[k]);
        if (zc.is_zero()) continue;
        pieces.emplace_back(-zc, detour(ell - 2 * k));
    }
    NormalMorphism slid = normalize(detour(ell));
    NormalKey top = identity_key(w);
    for (auto& s : top.strands)
        if (s.in_top == down && s.in_pos == p) s.dots = ell;
    top.canonicalize();
    auto itop = slid.terms.find(top);
    if (itop == slid.terms.end() || itop->second != BubblePoly(GRat(1)))
        throw std::runtime_error("dot carrying lost its leading term");
    slid.terms.erase(itop);
    for (const auto& [k2, c2] : slid.terms)
        if (k2.total_dots() >= ell)
            throw std::runtime_error("dot carrying failed to shed dots");
    if (!slid.is_zero()) pieces.emplace_back(PolyZ(GRat(-1)), nm_to_expr(slid));

    return ctx.repl_cache.emplace(key, std::move(pieces)).first->second;
}

// first strand holding at least ell dots, checked against the allowed rules
int pick_strand(const NormalKey& k, const ReduceCtx& ctx) {
    for (size_t i = 0; i < k.strands.size(); ++i) {
        if (k.strands[i].dots < ctx.data.ell) continue;
        bool down = k.strands[i].in_top;
        if (ctx.rules == CycloRules::UpOnly && down)
            throw std::runtime_error("a down strand reached the up sided reducer");
        if (ctx.rules == CycloRules::DownOnly && !down)
            throw std::runtime_error("an up strand reached the down sided reducer");
        return (int)i;
    }
    return -1;
}

CycloMorphism cm_assemble(const Word& src, const Word& dst, std::map<NormalKey, PolyZ> terms,
                          int ell) {
    for (const auto& [k, c] : terms)
        for (const auto& s : k.strands)
            if (s.dots >= ell)
                throw std::runtime_error("quotient normal form kept too many dots");
    CycloMorphism out;
    out.src = src;
    out.dst = dst;
    out.terms = std::move(terms);
    return out;
}

CycloMorphism reduce_keys(std::map<NormalKey, PolyZ> agenda, const Word& src, const Word& dst,
                          ReduceCtx& ctx) {
    std::map<NormalKey, PolyZ> done;
    while (!agenda.empty()) {
        auto it = agenda.begin();
        NormalKey key = it->first;
        PolyZ coeff = it->second;
        agenda.erase(it);
        if (coeff.is_zero()) continue;
        int si = pick_strand(key, ctx);
        if (si < 0) {
            map_add(done, key, coeff);
            continue;
        }
        Strand st = key.strands[si];
        bool down = st.in_top;
        NormalKey k0 = key;
        k0.strands[si].dots -= ctx.data.ell;
        k0.canonicalize();
        Expr e0 = realize(k0);
        const auto& pieces = strand_replacement(ctx, down ? dst : src, st.in_pos, down);
        for (const auto& [pc, pe] : pieces) {
            Expr full = down ? expr_compose(pe, e0) : expr_compose(e0, pe);
            NormalMorphism nm = normalize(full);
            for (const auto& [k2, bp] : nm.terms)
                map_add(agenda, k2, coeff * pc * ctx_specialize(ctx, bp));
        }
    }
    return cm_assemble(src, dst, std::move(done), ctx.data.ell);
}

Word word_flip_reverse(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (auto& d : r) d = d == Dir::Up ? Dir::Down : Dir::Up;
    return r;
}

// bend every source letter to the back of the target, leaving a vector
Expr to_vector(Expr e) {
    while (!e.src.empty()) {
        Dir t = e.src.back();
        Word a(e.src.begin(), e.src.end() - 1);
        if (t == Dir::Up) {
            e = expr_compose(expr_tensor(e, expr_identity(Word{Dir::Down})),
                             expr_layer(a, GenKind::LCup, {}));
        } else {
            e = expr_compose(expr_tensor(e, expr_identity(Word{Dir::Up})),
                             expr_layer(a, GenKind::RCup, {}));
        }
    }
    return e;
}

Expr from_vector(Expr e, const Word& a) {
    for (Dir t : a) {
        if (e.dst.empty()) throw std::runtime_error("vector form ran out of letters");
        Word c(e.dst.begin(), e.dst.end() - 1);
        if (t == Dir::Up) {
            if (e.dst.back() != Dir::Down)
                throw std::runtime_error("vector form lost track of a bent letter");
            e = expr_compose(expr_layer(c, GenKind::LCap, {}),
                             expr_tensor(e, expr_identity(Word{Dir::Up})));
        } else {
            if (e.dst.back() != Dir::Up)
                throw std::runtime_error("vector form lost track of a bent letter");
            e = expr_compose(expr_layer(c, GenKind::RCap, {}),
                             expr_tensor(e, expr_identity(Word{Dir::Down})));
        }
    }
    return e;
}

// bend every target letter to the back of the source, leaving a covector
Expr to_covector(Expr e) {
    while (!e.dst.empty()) {
        Dir t = e.dst.back();
        Word c(e.dst.begin(), e.dst.end() - 1);
        if (t == Dir::Up) {
            e = expr_compose(expr_layer(c, GenKind::RCap, {}),
                             expr_tensor(e, expr_identity(Word{Dir::Down})));
        } else {
            e = expr_compose(expr_layer(c, GenKind::LCap, {}),
                             expr_tensor(e, expr_identity(Word{Dir::Up})));
        }
    }
    return e;
}

Expr from_covector(Expr e, const Word& b) {
    for (Dir t : b) {
        if (e.src.empty()) throw std::runtime_error("covector form ran out of letters");
        Word a(e.src.begin(), e.src.end() - 1);
        if (t == Dir::Up) {
            if (e.src.back() != Dir::Down)
                throw std::runtime_error("covector form lost track of a bent letter");
            e = expr_compose(expr_tensor(e, expr_identity(Word{Dir::Up})),
                             expr_layer(a, GenKind::RCup, {}));
        } else {
            if (e.src.back() != Dir::Up)
                throw std::runtime_error("covector form lost track of a bent letter");
            e = expr_compose(expr_tensor(e, expr_identity(Word{Dir::Down})),
                             expr_layer(a, GenKind::LCup, {}));
        }
    }
    return e;
}

struct SortExprs {
    Expr fwd;
    Expr bwd;
    Word sorted;
};

// braid taking a word to its form with all down letters in front
SortExprs sort_downs(const Word& w) {
    Word cur = w;
    Expr fwd = expr_identity(w);
    std::vector<std::pair<int, Word>> steps;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int q = 0; q + 1 < (int)cur.size(); ++q) {
            if (cur[q] == Dir::Up && cur[q + 1] == Dir::Down) {
                steps.emplace_back(q, cur);
                Word left(cur.begin(), cur.begin() + q);
                Word right(cur.begin() + q + 2, cur.end());
                fwd = expr_compose(expr_layer(left, GenKind::LCross, right), fwd);
                std::swap(cur[q], cur[q + 1]);
                changed = true;
            }
        }
    }
    Expr bwd = expr_identity(cur);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        Word after = it->second;
        std::swap(after[it->first], after[it->first + 1]);
        Word left(after.begin(), after.begin() + it->first);
        Word right(after.begin() + it->first + 2, after.end());
        bwd = expr_compose(expr_layer(left, GenKind::RCross, right), bwd);
    }
    return {fwd, bwd, cur};
}

bool has_overfull_strand(const std::map<NormalKey, PolyZ>& terms, int ell) {
    for (const auto& [k, c] : terms)
        for (const auto& s : k.strands)
            if (s.dots >= ell) return true;
    return false;
}

// one sided reduction: bend everything into the form whose strands all enter
// on the side the allowed rule can see, reduce there, and bend back
CycloMorphism reduce_restricted(const NormalMorphism& m, const CycloData& data,
                                CycloRules rules) {
    bool up_only = rules == CycloRules::UpOnly;
    ReduceCtx ctx{data, rules, {}, {}};
    std::map<NormalKey, PolyZ> cur;
    for (const auto& [k, bp] : m.terms) map_add(cur, k, ctx_specialize(ctx, bp));
    while (has_overfull_strand(cur, data.ell)) {
        std::map<NormalKey, PolyZ> next;
        for (const auto& [mono, nm] : decompose_by_zmono(m.src, m.dst, cur)) {
            Expr bent = up_only ? to_covector(nm_to_expr(nm)) : to_vector(nm_to_expr(nm));
            NormalMorphism bnm = normalize(bent);
            std::map<NormalKey, PolyZ> agenda;
            for (const auto& [k, bp] : bnm.terms) map_add(agenda, k, ctx_specialize(ctx, bp));
            CycloMorphism red = reduce_keys(std::move(agenda), bnm.src, bnm.dst, ctx);
            for (const auto& [mono2, nm2] : decompose_by_zmono(red.src, red.dst, red.terms)) {
                Expr back = up_only ? from_covector(nm_to_expr(nm2), m.dst)
                                    : from_vector(nm_to_expr(nm2), m.src);
                NormalMorphism bk = normalize(back);
                PolyZ mz = zmono_poly(zmono_mul(mono, mono2));
                for (const auto& [k2, bp2] : bk.terms)
                    map_add(next, k2, mz * ctx_specialize(ctx, bp2));
            }
        }
        cur = std::move(next);
    }
    return cm_assemble(m.src, m.dst, std::move(cur), data.ell);
}

} // namespace

PolyZ bubble_specialize(const BubblePoly& p, const CycloData& data) {
    ReduceCtx ctx{data, CycloRules::Both, {}, {}};
    return ctx_specialize(ctx, p);
}

CycloMorphism cyclo_normalize(const NormalMorphism& m, const CycloData& data, CycloRules rules) {
    if (rules != CycloRules::Both) return reduce_restricted(m, data, rules);
    ReduceCtx ctx{data, rules, {}, {}};
    std::map<NormalKey, PolyZ> agenda;
    for (const auto& [k, bp] : m.terms) map_add(agenda, k, ctx_specialize(ctx, bp));
    return reduce_keys(std::move(agenda), m.src, m.dst, ctx);
}

CycloMorphism cyclo_normalize(const Expr& e, const CycloData& data, CycloRules rules) {
    return cyclo_normalize(normalize(e), data, rules);
}

HomTransport hom_transport(const Word& a, const Word& b) {
    HomTransport t;
    t.a = a;
    t.b = b;
    int ups_a = 0, downs_a = 0, ups_b = 0, downs_b = 0;
    for (Dir d : a) (d == Dir::Up ? ups_a : downs_a)++;
    for (Dir d : b) (d == Dir::Up ? ups_b : downs_b)++;
    t.flow_ok = ups_a + downs_b == ups_b + downs_a;
    t.rank = ups_a + downs_b;
    return t;
}

NormalMorphism HomTransport::to_end(const NormalMorphism& m) const {
    if (!flow_ok) throw std::invalid_argument("hom transport over a zero space");
    if (m.src != a || m.dst != b)
        throw std::invalid_argument("hom transport got the wrong boundary");
    Expr e = to_vector(nm_to_expr(m));
    SortExprs srt = sort_downs(e.dst);
    e = expr_compose(srt.fwd, e);
    for (int i = 0; i < rank; ++i) {
        Word rest(e.dst.begin() + 1, e.dst.end());
        e = expr_compose(expr_layer({}, GenKind::RCap, rest),
                         expr_tensor(expr_identity(Word{Dir::Up}), e));
    }
    return normalize(e);
}

NormalMorphism HomTransport::from_end(const NormalMorphism& m) const {
    if (!flow_ok) throw std::invalid_argument("hom transport over a zero space");
    Word endw(rank, Dir::Up);
    if (m.src != endw || m.dst != endw)
        throw std::invalid_argument("hom transport expected endomorphisms of up strands");
    Expr e = nm_to_expr(m);
    for (int i = 0; i < rank; ++i) {
        Word x(e.src.begin() + 1, e.src.end());
        e = expr_compose(expr_tensor(expr_identity(Word{Dir::Down}), e),
                         expr_layer({}, GenKind::RCup, x));
    }
    Word w = b;
    Word fl = word_flip_reverse(a);
    w.insert(w.end(), fl.begin(), fl.end());
    SortExprs srt = sort_downs(w);
    e = expr_compose(srt.bwd, e);
    e = from_vector(e, a);
    return normalize(e);
}

namespace {

// the affine monomial whose image has this key as leading term
ASergMono mono_of_key(const NormalKey& key, int r) {
    ASergMono m;
    m.a.assign(r, 0);
    m.b.assign(r, 0);
    m.w.assign(r, 0);
    for (const auto& s : key.strands) {
        if (s.in_top || !s.out_top)
            throw std::runtime_error("endomorphism key with a bent strand");
        int j = r - s.in_pos;
        int wj = r - s.out_pos;
        m.a[wj - 1] = s.dots;
        m.w[j - 1] = wj - 1;
        m.b[wj - 1] = s.cliff;
    }
    return m;
}

const NormalMorphism& mono_image(const ASergMono& m, int r,
                                 std::map<ASergMono, NormalMorphism>& cache) {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, normalize(nu_image(r, m))).first;
    return it->second;
}

// invert the triangular change of basis between diagram keys and monomials
ASergElement nm_to_aserg(const NormalMorphism& g, int r,
                         std::map<ASergMono, NormalMorphism>& cache) {
    std::map<NormalKey, GRat> work;
    for (const auto& [k, bp] : g.terms) {
        if (!bp.is_constant())
            throw std::runtime_error("unexpected bubble among up strand endomorphisms");
        if (!bp.constant_term().is_zero()) work.emplace(k, bp.constant_term());
    }
    ASergElement out = aserg_zero(r);
    while (!work.empty()) {
        auto best = work.begin();
        for (auto it = work.begin(); it != work.end(); ++it)
            if (it->first.total_dots() > best->first.total_dots()) best = it;
        NormalKey key = best->first;
        GRat c0 = best->second;
        ASergMono mono = mono_of_key(key, r);
        const NormalMorphism& nm = mono_image(mono, r, cache);
        auto ik = nm.terms.find(key);
        if (ik == nm.terms.end())
            throw std::runtime_error("a key is missing from its own monomial image");
        GRat c = c0 / ik->second.constant_term();
        aserg_add_term(out, mono, c);
        for (const auto& [k2, bp2] : nm.terms) {
            GRat sub = c * bp2.constant_term();
            auto iw = work.find(k2);
            if (iw == work.end()) {
                if (!sub.is_zero()) work.emplace(k2, -sub);
            } else {
                iw->second -= sub;
                if (iw->second.is_zero()) work.erase(iw);
            }
        }
    }
    return out;
}

} // namespace

CycloMorphism cyclo_normalize_transport(const NormalMorphism& m, const CycloData& data) {
    ReduceCtx ctx{data, CycloRules::Both, {}, {}};
    std::map<NormalKey, PolyZ> cur;
    for (const auto& [k, bp] : m.terms) map_add(cur, k, ctx_specialize(ctx, bp));
    HomTransport tr = hom_transport(m.src, m.dst);
    if (!tr.flow_ok) {
        if (!cur.empty()) throw std::runtime_error("nonzero morphism with mismatched flow");
        CycloMorphism out;
        out.src = m.src;
        out.dst = m.dst;
        return out;
    }
    CycloSerg alg{tr.rank, data.ell, data.z};
    std::map<ASergMono, NormalMorphism> cache;
    Word endw(tr.rank, Dir::Up);
    while (has_overfull_strand(cur, data.ell)) {
        std::map<NormalKey, PolyZ> next;
        for (const auto& [mono, nm] : decompose_by_zmono(m.src, m.dst, cur)) {
            NormalMorphism g = tr.to_end(nm);
            // bending can close curls into bubbles, so specialize again
            std::map<NormalKey, PolyZ> gmap;
            for (const auto& [k, bp] : g.terms) map_add(gmap, k, ctx_specialize(ctx, bp));
            for (const auto& [mono2, g2] : decompose_by_zmono(endw, endw, gmap)) {
                ASergElement el = nm_to_aserg(g2, tr.rank, cache);
                ASergElement red = cyclo_reduce(el, alg);
                NormalMorphism gr = nm_zero(endw, endw);
                for (const auto& [am, c] : red.terms)
                    gr = nm_add(gr, nm_scale(mono_image(am, tr.rank, cache), BubblePoly(c)));
                NormalMorphism h = tr.from_end(gr);
                PolyZ mz = zmono_poly(zmono_mul(mono, mono2));
                for (const auto& [k2, bp2] : h.terms)
                    map_add(next, k2, mz * ctx_specialize(ctx, bp2));
            }
        }
        cur = std::move(next);
    }
    return cm_assemble(m.src, m.dst, std::move(cur), data.ell);
}

CycloMorphism cyclo_normalize_transport(const Expr& e, const CycloData& data) {
    return cyclo_normalize_transport(normalize(e), data);
}

namespace {

long count_bubble_monos(int half, int cap) {
    if (cap < 0) return 0;
    if (half <= 0) return 1;
    int idx = 2 * half - 1;
    long total = 0;
    for (int t = 0; t * idx <= cap; ++t) total += count_bubble_monos(half - 1, cap - t * idx);
    return total;
}

void list_bubble_monos(int half, int r, int cap, const BubbleMonomial& cur,
                       std::vector<BubbleMonomial>& out) {
    if (r > half) {
        out.push_back(cur);
        return;
    }
    int idx = 2 * r - 1;
    for (int t = 0; t * idx <= cap; ++t) {
        BubbleMonomial next = cur;
        next.insert(next.end(), t, idx);
        list_bubble_monos(half, r + 1, cap - t * idx, next, out);
    }
}

} // namespace

long cyclo_dim(const Word& a, const Word& b, const CycloData& data, bool include_bubbles,
               int bubble_dot_cap) {
    if (include_bubbles && bubble_dot_cap < 0)
        throw std::invalid_argument("counting bubble monomials needs a dot cap");
    if (!hom_transport(a, b).flow_ok) return 0;
    long bubbles = include_bubbles ? count_bubble_monos(data.half(), bubble_dot_cap) : 1;
    if (data.ell == 0) return a.empty() && b.empty() ? bubbles : 0;
    int strands = (int)(a.size() + b.size()) / 2;
    auto keys = enumerate_keys(a, b, strands * (data.ell - 1), data.ell - 1);
    return (long)keys.size() * bubbles;
}

CycloData obcf_bridge(int ell, const std::vector<GRat>& z, int precision) {
    return cyclo_data_formal(ell, z, precision);
}

std::vector<CycloCheck> obcf_bridge_checks(const CycloData& data,
                                           const std::vector<std::pair<Word, Word>>& samples,
                                           int bubble_dot_cap) {
    if (!data.formal)
        throw std::invalid_argument("the bridge checks expect formal second coefficients");
    std::vector<CycloCheck> out;
    bool uni = true;
    for (int r = 1; r <= data.half(); ++r) {
        PolyZ diff = data.delta[r] - PolyZ::generator(r);
        for (const auto& [mz, c] : diff.terms())
            if ((int)mz.size() >= r) uni = false;
    }
    out.push_back({"series values shift the formal coefficients unitriangularly", uni});
    if (data.half() >= 1) {
        out.push_back({"leading series value subtracts the plain coefficient",
                       data.delta[1] == PolyZ::generator(1) - PolyZ(data.z[1])});
    } else {
        bool allzero = true;
        for (size_t r = 1; r < data.delta.size(); ++r) allzero = allzero && data.delta[r].is_zero();
        out.push_back({"series values vanish without formal coefficients", allzero});
    }
    std::vector<BubbleMonomial> monos;
    list_bubble_monos(data.half(), 1, bubble_dot_cap, {}, monos);
    for (const auto& [a, b] : samples) {
        long rank = cyclo_dim(a, b, data, false);
        long with = cyclo_dim(a, b, data, true, bubble_dot_cap);
        long pairs = 0;
        if (hom_transport(a, b).flow_ok) {
            if (data.ell == 0) {
                pairs = a.empty() && b.empty() ? (long)monos.size() : 0;
            } else {
                int strands = (int)(a.size() + b.size()) / 2;
                auto keys = enumerate_keys(a, b, strands * (data.ell - 1), data.ell - 1);
                for (size_t i = 0; i < keys.size(); ++i) pairs += (long)monos.size();
            }
        }
        out.push_back({"scalar monomials tensor the plain basis over " + word_str(a) + " to " +
                           word_str(b),
                       pairs == with && with == rank * (long)monos.size()});
    }
    int prec = (int)data.delta.size() - 1;
    CycloData numeric = cyclo_data(data.ell, data.z, data.z, prec);
    Expr probe = expr_identity(Word{Dir::Up});
    for (int t = 0; t < data.ell; ++t) probe = expr_compose(expr_layer({}, GenKind::BlackDot, {}), probe);
    CycloMorphism formal_red = cyclo_normalize(probe, data);
    CycloMorphism numeric_red = cyclo_normalize(probe, numeric);
    std::vector<GRat> vals(data.z.begin() + 1, data.z.end());
    out.push_back(
        {"reduction commutes with numeric substitution", cm_eval(formal_red, vals) == numeric_red});
    return out;
}

nlohmann::json cyclo_data_to_json(const CycloData& data) {
    nlohmann::json j;
    j["l"] = data.ell;
    nlohmann::json zs = nlohmann::json::array();
    for (const auto& v : data.z) zs.push_back(grat_to_string(v));
    j["z"] = zs;
    if (data.formal) {
        j["zprime"] = "formal";
    } else {
        nlohmann::json zp = nlohmann::json::array();
        for (const auto& v : data.zprime) zp.push_back(grat_to_string(v));
        j["zprime"] = zp;
    }
    nlohmann::json ds = nlohmann::json::array();
    for (const auto& p : data.delta) ds.push_back(polyz_to_string(p));
    j["delta"] = ds;
    nlohmann::json dps = nlohmann::json::array();
    for (const auto& p : data.delta_prime) dps.push_back(polyz_to_string(p));
    j["delta_prime"] = dps;
    return j;
}

} // namespace obc

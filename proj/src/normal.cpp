#include "obc/normal.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace obc {

namespace {

Word wcat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Word wcat(Word a, Dir d) {
    a.push_back(d);
    return a;
}

Word subword(const Word& w, int from, int to) {
    return Word(w.begin() + from, w.begin() + to);
}

} // namespace

bool operator==(const Strand& a, const Strand& b) {
    return a.in_top == b.in_top && a.in_pos == b.in_pos && a.out_top == b.out_top &&
           a.out_pos == b.out_pos && a.cliff == b.cliff && a.dots == b.dots;
}

bool operator<(const Strand& a, const Strand& b) {
    return std::tie(a.in_top, a.in_pos, a.out_top, a.out_pos, a.cliff, a.dots) <
           std::tie(b.in_top, b.in_pos, b.out_top, b.out_pos, b.cliff, b.dots);
}

void NormalKey::canonicalize() {
    std::sort(strands.begin(), strands.end());
}

int NormalKey::total_dots() const {
    int n = 0;
    for (const Strand& s : strands) n += s.dots;
    return n;
}

int NormalKey::parity() const {
    int n = 0;
    for (const Strand& s : strands) n += s.cliff;
    return n % 2;
}

bool operator==(const NormalKey& a, const NormalKey& b) {
    return a.src == b.src && a.dst == b.dst && a.strands == b.strands;
}

bool operator<(const NormalKey& a, const NormalKey& b) {
    return std::tie(a.src, a.dst, a.strands) < std::tie(b.src, b.dst, b.strands);
}

bool operator==(const NormalMorphism& a, const NormalMorphism& b) {
    return a.src == b.src && a.dst == b.dst && a.terms == b.terms;
}

NormalKey identity_key(const Word& w) {
    NormalKey k;
    k.src = w;
    k.dst = w;
    for (int i = 0; i < (int)w.size(); ++i) {
        Strand s;
        if (w[i] == Dir::Up) {
            s.in_top = false;
            s.in_pos = i;
            s.out_top = true;
            s.out_pos = i;
        } else {
            s.in_top = true;
            s.in_pos = i;
            s.out_top = false;
            s.out_pos = i;
        }
        k.strands.push_back(s);
    }
    k.canonicalize();
    return k;
}

NormalMorphism nm_identity(const Word& w) {
    NormalMorphism m;
    m.src = w;
    m.dst = w;
    m.terms[identity_key(w)] = BubblePoly(GRat(1));
    return m;
}

NormalMorphism nm_zero(const Word& src, const Word& dst) {
    NormalMorphism m;
    m.src = src;
    m.dst = dst;
    return m;
}

void nm_add_term(NormalMorphism& m, const NormalKey& k, const BubblePoly& p) {
    if (p.is_zero()) return;
    auto it = m.terms.find(k);
    if (it == m.terms.end()) {
        m.terms.emplace(k, p);
    } else {
        it->second = it->second + p;
        if (it->second.is_zero()) m.terms.erase(it);
    }
}

NormalMorphism nm_add(const NormalMorphism& a, const NormalMorphism& b) {
    if (a.src != b.src || a.dst != b.dst)
        throw std::invalid_argument("normal form sum needs matching boundaries");
    NormalMorphism out = a;
    for (const auto& [k, p] : b.terms) nm_add_term(out, k, p);
    return out;
}

NormalMorphism nm_scale(const NormalMorphism& m, const BubblePoly& c) {
    NormalMorphism out = nm_zero(m.src, m.dst);
    for (const auto& [k, p] : m.terms) nm_add_term(out, k, p * c);
    return out;
}

// ---------------------------------------------------------------------------
// realize

namespace {

GenKind crossing_for(Dir a, Dir b) {
    if (a == Dir::Up && b == Dir::Up) return GenKind::UpCross;
    if (a == Dir::Down && b == Dir::Down) return GenKind::DownCross;
    if (a == Dir::Up && b == Dir::Down) return GenKind::LCross;
    return GenKind::RCross;
}

Layer layer_at(const Word& w, int pos, GenKind g, int span) {
    return Layer{subword(w, 0, pos), g, subword(w, pos + span, (int)w.size())};
}

Stack realize_stack(const NormalKey& k) {
    Stack out;
    const int ns = (int)k.strands.size();

    // whites at bottom out ends
    {
        std::vector<int> ps;
        for (const Strand& s : k.strands)
            if (!s.out_top && s.cliff) ps.push_back(s.out_pos);
        std::sort(ps.begin(), ps.end());
        for (int p : ps) out.push_back(layer_at(k.src, p, GenKind::DownWhiteDot, 1));
    }
    // blacks at bottom in ends
    {
        std::vector<std::pair<int, int>> ps;
        for (const Strand& s : k.strands)
            if (!s.in_top && s.dots > 0) ps.emplace_back(s.in_pos, s.dots);
        std::sort(ps.begin(), ps.end());
        for (auto [p, d] : ps)
            for (int i = 0; i < d; ++i) out.push_back(layer_at(k.src, p, GenKind::BlackDot, 1));
    }

    // core: caps, the through permutation, then cups
    Word cur = k.src;
    struct PortRef {
        int strand;
        bool is_in;
    };
    std::vector<PortRef> ports(cur.size());
    for (int i = 0; i < ns; ++i) {
        const Strand& s = k.strands[i];
        if (!s.in_top) ports[s.in_pos] = PortRef{i, true};
        if (!s.out_top) ports[s.out_pos] = PortRef{i, false};
    }

    auto emit_swap = [&](int t) {
        out.push_back(layer_at(cur, t, crossing_for(cur[t], cur[t + 1]), 2));
        std::swap(cur[t], cur[t + 1]);
        std::swap(ports[t], ports[t + 1]);
    };

    std::vector<int> caps;
    for (int i = 0; i < ns; ++i)
        if (!k.strands[i].in_top && !k.strands[i].out_top) caps.push_back(i);
    while (!caps.empty()) {
        int best = -1, ba = 0, bb = 0;
        for (int idx : caps) {
            int a = -1, b = -1;
            for (int t = 0; t < (int)ports.size(); ++t)
                if (ports[t].strand == idx) (a < 0 ? a : b) = t;
            if (best < 0 || std::make_pair(b - a, a) < std::make_pair(bb - ba, ba)) {
                best = idx;
                ba = a;
                bb = b;
            }
        }
        for (int t = bb - 1; t > ba; --t) emit_swap(t);
        out.push_back(layer_at(cur, ba, cur[ba] == Dir::Up ? GenKind::RCap : GenKind::LCap, 2));
        cur.erase(cur.begin() + ba, cur.begin() + ba + 2);
        ports.erase(ports.begin() + ba, ports.begin() + ba + 2);
        caps.erase(std::find(caps.begin(), caps.end(), best));
    }

    // sort the through strands by their top position
    {
        auto target = [&](int t) {
            const Strand& s = k.strands[ports[t].strand];
            return s.in_top ? s.in_pos : s.out_pos;
        };
        bool moved = true;
        while (moved) {
            moved = false;
            for (int t = 0; t + 1 < (int)ports.size(); ++t)
                if (target(t) > target(t + 1)) {
                    emit_swap(t);
                    moved = true;
                    break;
                }
        }
    }

    // cups, replayed from a downward pass over the top word
    {
        Word topcur = k.dst;
        std::vector<PortRef> topports(topcur.size());
        for (int i = 0; i < ns; ++i) {
            const Strand& s = k.strands[i];
            if (s.in_top) topports[s.in_pos] = PortRef{i, true};
            if (s.out_top) topports[s.out_pos] = PortRef{i, false};
        }
        Stack rec;
        std::vector<int> cups;
        for (int i = 0; i < ns; ++i)
            if (k.strands[i].in_top && k.strands[i].out_top) cups.push_back(i);
        while (!cups.empty()) {
            int best = -1, ba = 0, bb = 0;
            for (int idx : cups) {
                int a = -1, b = -1;
                for (int t = 0; t < (int)topcur.size(); ++t)
                    if (topports[t].strand == idx) (a < 0 ? a : b) = t;
                if (best < 0 || std::make_pair(b - a, a) < std::make_pair(bb - ba, ba)) {
                    best = idx;
                    ba = a;
                    bb = b;
                }
            }
            for (int t = bb - 1; t > ba; --t) {
                rec.push_back(layer_at(topcur, t, crossing_for(topcur[t + 1], topcur[t]), 2));
                std::swap(topcur[t], topcur[t + 1]);
                std::swap(topports[t], topports[t + 1]);
            }
            rec.push_back(
                layer_at(topcur, ba, topcur[ba] == Dir::Up ? GenKind::LCup : GenKind::RCup, 2));
            topcur.erase(topcur.begin() + ba, topcur.begin() + ba + 2);
            topports.erase(topports.begin() + ba, topports.begin() + ba + 2);
            cups.erase(std::find(cups.begin(), cups.end(), best));
        }
        if (topcur != cur) throw std::runtime_error("inconsistent matching in realize");
        for (int t = 0; t < (int)ports.size(); ++t)
            if (topports[t].strand != ports[t].strand)
                throw std::runtime_error("inconsistent matching in realize");
        out.insert(out.end(), rec.rbegin(), rec.rend());
    }

    // blacks at top in ends
    {
        std::vector<std::pair<int, int>> ps;
        for (const Strand& s : k.strands)
            if (s.in_top && s.dots > 0) ps.emplace_back(s.in_pos, s.dots);
        std::sort(ps.begin(), ps.end());
        for (auto [p, d] : ps)
            for (int i = 0; i < d; ++i) out.push_back(layer_at(k.dst, p, GenKind::DownBlackDot, 1));
    }
    // whites at top out ends
    {
        std::vector<int> ps;
        for (const Strand& s : k.strands)
            if (s.out_top && s.cliff) ps.push_back(s.out_pos);
        std::sort(ps.begin(), ps.end());
        for (int p : ps) out.push_back(layer_at(k.dst, p, GenKind::WhiteDot, 1));
    }
    return out;
}

} // namespace

Expr realize(const NormalKey& k) {
    Expr e;
    e.src = k.src;
    e.dst = k.dst;
    e.terms[realize_stack(k)] = GRat(1);
    return e;
}

Expr nm_to_expr(const NormalMorphism& m) {
    Expr out;
    out.src = m.src;
    out.dst = m.dst;
    for (const auto& [k, poly] : m.terms) {
        Stack base = realize_stack(k);
        for (const auto& [mono, c] : poly.terms()) {
            Stack st = base;
            for (int idx : mono) {
                st.push_back(Layer{k.dst, GenKind::RCup, {}});
                for (int i = 0; i < idx; ++i)
                    st.push_back(Layer{wcat(k.dst, Dir::Down), GenKind::BlackDot, {}});
                st.push_back(Layer{k.dst, GenKind::LCap, {}});
            }
            out.add_term(st, c);
        }
    }
    return out;
}

BubblePoly eval_loop(bool clockwise, int whites, int blacks, int sign) {
    if (whites % 2 != 0) return BubblePoly();
    if (blacks % 2 == 0) return BubblePoly();
    BubblePoly v = clockwise ? delta_prime(blacks) : BubblePoly::generator(blacks);
    if (sign < 0) v = v.scaled(GRat(-1));
    return v;
}

// ---------------------------------------------------------------------------
// slide rules

namespace {

enum class Corner { TL, TR, BL, BR };

// correction stacks and signs for one black dot crossing one crossing layer
std::vector<std::pair<Stack, GRat>> slide_patterns(GenKind kind, Corner c, const Word& l,
                                                   const Word& r) {
    std::vector<std::pair<Stack, GRat>> out;
    auto sign_pair = [&](int s0, int s1, Stack p0, Stack p1) {
        out.emplace_back(std::move(p0), GRat(s0));
        out.emplace_back(std::move(p1), GRat(s1));
    };
    switch (kind) {
    case GenKind::UpCross: {
        Stack id_pat;
        Stack cc = {Layer{wcat(l, Dir::Up), GenKind::WhiteDot, r},
                    Layer{l, GenKind::WhiteDot, wcat(Word{Dir::Up}, r)}};
        switch (c) {
        case Corner::TL: sign_pair(1, -1, id_pat, cc); break;
        case Corner::TR: sign_pair(-1, -1, id_pat, cc); break;
        case Corner::BR: sign_pair(-1, 1, id_pat, cc); break;
        case Corner::BL: sign_pair(1, 1, id_pat, cc); break;
        }
        break;
    }
    case GenKind::RCross: {
        Stack plain = {Layer{l, GenKind::LCap, r}, Layer{l, GenKind::LCup, r}};
        Stack whited = {Layer{wcat(l, Dir::Down), GenKind::WhiteDot, r},
                        Layer{l, GenKind::LCap, r}, Layer{l, GenKind::LCup, r},
                        Layer{l, GenKind::WhiteDot, wcat(Word{Dir::Down}, r)}};
        switch (c) {
        case Corner::BL: sign_pair(1, 1, plain, whited); break;
        case Corner::TL: sign_pair(-1, 1, plain, whited); break;
        case Corner::TR: sign_pair(-1, -1, plain, whited); break;
        case Corner::BR: sign_pair(1, -1, plain, whited); break;
        }
        break;
    }
    case GenKind::LCross: {
        Stack plain = {Layer{l, GenKind::RCap, r}, Layer{l, GenKind::RCup, r}};
        Stack whited = {Layer{l, GenKind::WhiteDot, wcat(Word{Dir::Down}, r)},
                        Layer{l, GenKind::RCap, r}, Layer{l, GenKind::RCup, r},
                        Layer{wcat(l, Dir::Down), GenKind::WhiteDot, r}};
        switch (c) {
        case Corner::BR: sign_pair(-1, -1, plain, whited); break;
        case Corner::TR: sign_pair(1, -1, plain, whited); break;
        case Corner::TL: sign_pair(1, 1, plain, whited); break;
        case Corner::BL: sign_pair(-1, 1, plain, whited); break;
        }
        break;
    }
    case GenKind::DownCross: {
        Stack id_pat;
        Stack cc = {Layer{wcat(l, Dir::Down), GenKind::DownWhiteDot, r},
                    Layer{l, GenKind::DownWhiteDot, wcat(Word{Dir::Down}, r)}};
        switch (c) {
        case Corner::BR: sign_pair(1, 1, id_pat, cc); break;
        case Corner::BL: sign_pair(-1, 1, id_pat, cc); break;
        case Corner::TL: sign_pair(-1, -1, id_pat, cc); break;
        case Corner::TR: sign_pair(1, -1, id_pat, cc); break;
        }
        break;
    }
    default: throw std::invalid_argument("slide patterns need a crossing");
    }
    return out;
}

// ---------------------------------------------------------------------------
// loop transport

struct TransportPiece {
    Stack stack;
    GRat sign;
};

// stacks realizing the hop of a loop over one strand, with the crossing on the
// dotted leg replaced by one of its two slide patterns
std::vector<TransportPiece> transport_stacks(bool clockwise, Dir shield, const Word& L,
                                             const Word& R, int dots, int whites) {
    std::vector<TransportPiece> out;
    if (dots < 1) return out;
    const Dir u = Dir::Up, d = Dir::Down;
    for (int a = 0; a + 1 <= dots; ++a) {
        int b = dots - 1 - a;
        for (int pat = 0; pat < 2; ++pat) {
            Stack st;
            GRat sign;
            if (!clockwise && shield == u) {
                st.push_back(Layer{wcat(L, u), GenKind::RCup, R});
                st.push_back(Layer{L, GenKind::LCross, wcat(Word{u}, R)});
                if (whites) st.push_back(Layer{wcat(L, Word{d, u}), GenKind::WhiteDot, R});
                for (int i = 0; i < b; ++i)
                    st.push_back(Layer{wcat(L, Word{d, u}), GenKind::BlackDot, R});
                if (pat == 0) {
                    sign = GRat(1);
                } else {
                    sign = GRat(-1);
                    st.push_back(Layer{wcat(L, Word{d, u}), GenKind::WhiteDot, R});
                    st.push_back(Layer{wcat(L, d), GenKind::WhiteDot, wcat(Word{u}, R)});
                }
                for (int i = 0; i < a; ++i)
                    st.push_back(Layer{wcat(L, d), GenKind::BlackDot, wcat(Word{u}, R)});
                st.push_back(Layer{wcat(L, d), GenKind::UpCross, R});
                st.push_back(Layer{L, GenKind::RCross, wcat(Word{u}, R)});
                st.push_back(Layer{wcat(L, u), GenKind::LCap, R});
            } else if (!clockwise && shield == d) {
                st.push_back(Layer{wcat(L, d), GenKind::RCup, R});
                st.push_back(Layer{L, GenKind::DownCross, wcat(Word{u}, R)});
                if (whites) st.push_back(Layer{wcat(L, Word{d, d}), GenKind::WhiteDot, R});
                for (int i = 0; i < b; ++i)
                    st.push_back(Layer{wcat(L, Word{d, d}), GenKind::BlackDot, R});
                if (pat == 0) {
                    sign = GRat(-1);
                } else {
                    sign = GRat(1);
                    st.push_back(Layer{wcat(L, Word{d, d}), GenKind::WhiteDot, R});
                }
                st.push_back(Layer{wcat(L, d), GenKind::LCap, R});
                st.push_back(Layer{wcat(L, d), GenKind::LCup, R});
                if (pat == 1)
                    st.push_back(Layer{wcat(L, d), GenKind::WhiteDot, wcat(Word{d}, R)});
                for (int i = 0; i < a; ++i)
                    st.push_back(Layer{wcat(L, d), GenKind::BlackDot, wcat(Word{d}, R)});
                st.push_back(Layer{wcat(L, d), GenKind::LCross, R});
                st.push_back(Layer{L, GenKind::DownCross, wcat(Word{u}, R)});
                st.push_back(Layer{wcat(L, d), GenKind::LCap, R});
            } else if (clockwise && shield == u) {
                st.push_back(Layer{wcat(L, u), GenKind::LCup, R});
                for (int i = 0; i < b; ++i)
                    st.push_back(Layer{wcat(L, u), GenKind::BlackDot, wcat(Word{d}, R)});
                if (pat == 0) {
                    sign = GRat(1);
                } else {
                    sign = GRat(-1);
                    st.push_back(Layer{wcat(L, u), GenKind::WhiteDot, wcat(Word{d}, R)});
                    st.push_back(Layer{L, GenKind::WhiteDot, wcat(Word{u, d}, R)});
                }
                for (int i = 0; i < a; ++i)
                    st.push_back(Layer{L, GenKind::BlackDot, wcat(Word{u, d}, R)});
                if (whites) st.push_back(Layer{L, GenKind::WhiteDot, wcat(Word{u, d}, R)});
                st.push_back(Layer{wcat(L, u), GenKind::LCross, R});
                st.push_back(Layer{wcat(L, u), GenKind::RCross, R});
                st.push_back(Layer{L, GenKind::UpCross, wcat(Word{d}, R)});
                st.push_back(Layer{wcat(L, u), GenKind::RCap, R});
            } else {
                st.push_back(Layer{wcat(L, d), GenKind::LCup, R});
                for (int i = 0; i < b; ++i)
                    st.push_back(Layer{wcat(L, d), GenKind::BlackDot, wcat(Word{d}, R)});
                if (pat == 0) {
                    sign = GRat(-1);
                } else {
                    sign = GRat(1);
                    st.push_back(Layer{wcat(L, d), GenKind::WhiteDot, wcat(Word{d}, R)});
                }
                st.push_back(Layer{L, GenKind::LCap, wcat(Word{d}, R)});
                st.push_back(Layer{L, GenKind::LCup, wcat(Word{d}, R)});
                if (pat == 1)
                    st.push_back(Layer{L, GenKind::WhiteDot, wcat(Word{d, d}, R)});
                for (int i = 0; i < a; ++i)
                    st.push_back(Layer{L, GenKind::BlackDot, wcat(Word{d, d}, R)});
                if (whites) st.push_back(Layer{L, GenKind::WhiteDot, wcat(Word{d, d}, R)});
                st.push_back(Layer{wcat(L, u), GenKind::DownCross, R});
                st.push_back(Layer{wcat(L, u), GenKind::DownCross, R});
                st.push_back(Layer{L, GenKind::LCross, wcat(Word{d}, R)});
                st.push_back(Layer{wcat(L, d), GenKind::RCap, R});
            }
            out.push_back(TransportPiece{std::move(st), sign});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// absorption

NormalMorphism absorb_gen(const NormalKey& key, GenKind g, int p);

int find_top_in(const NormalKey& k, int pos) {
    for (int i = 0; i < (int)k.strands.size(); ++i)
        if (k.strands[i].in_top && k.strands[i].in_pos == pos) return i;
    return -1;
}

int find_top_out(const NormalKey& k, int pos) {
    for (int i = 0; i < (int)k.strands.size(); ++i)
        if (k.strands[i].out_top && k.strands[i].out_pos == pos) return i;
    return -1;
}

void shift_tops(NormalKey& k, int from, int delta) {
    for (Strand& s : k.strands) {
        if (s.in_top && s.in_pos >= from) s.in_pos += delta;
        if (s.out_top && s.out_pos >= from) s.out_pos += delta;
    }
}

NormalMorphism nm_single(const Word& src, const Word& dst, NormalKey k, const BubblePoly& c) {
    NormalMorphism m = nm_zero(src, dst);
    k.canonicalize();
    nm_add_term(m, k, c);
    return m;
}

BubblePoly bp_int(int v) { return BubblePoly(GRat(v)); }

Expr stack_expr(Stack st, const Word& src, const Word& dst) {
    Expr e;
    e.src = src;
    e.dst = dst;
    e.add_term(st, GRat(1));
    return e;
}

Word dst_after(const NormalKey& key, GenKind g, int p) {
    Word w = subword(key.dst, 0, p);
    const Word& gd = gen_dst(g);
    w.insert(w.end(), gd.begin(), gd.end());
    Word tail = subword(key.dst, p + (int)gen_src(g).size(), (int)key.dst.size());
    w.insert(w.end(), tail.begin(), tail.end());
    return w;
}

NormalMorphism absorb_cup(const NormalKey& key, GenKind g, int p) {
    NormalKey k = key;
    shift_tops(k, p, 2);
    Strand s;
    if (g == GenKind::LCup) {
        s.in_top = true;
        s.in_pos = p + 1;
        s.out_top = true;
        s.out_pos = p;
    } else {
        s.in_top = true;
        s.in_pos = p;
        s.out_top = true;
        s.out_pos = p + 1;
    }
    k.strands.push_back(s);
    k.dst = dst_after(key, g, p);
    return nm_single(key.src, k.dst, k, bp_int(1));
}

NormalMorphism absorb_white(const NormalKey& key, GenKind g, int p) {
    NormalKey k = key;
    int sign = 1;
    auto b5_count = [&](int lo, int hi) {
        int n = 0;
        for (const Strand& s : key.strands)
            if (s.out_top && s.cliff && s.out_pos > lo && s.out_pos < hi) ++n;
        return n;
    };
    auto b1_above = [&](int q) {
        int n = 0;
        for (const Strand& s : key.strands)
            if (!s.out_top && s.cliff && s.out_pos > q) ++n;
        return n;
    };
    if (g == GenKind::WhiteDot) {
        int si = find_top_out(key, p);
        if (si < 0) throw std::runtime_error("white dot absorb on a non out end");
        if (b5_count(p, 1 << 30) % 2) sign = -sign;
        k.strands[si].cliff ^= 1;
    } else {
        int si = find_top_in(key, p);
        if (si < 0) throw std::runtime_error("down white dot absorb on a non in end");
        const Strand& s = key.strands[si];
        if (s.dots % 2) sign = -sign;
        if (s.out_top) {
            int q = s.out_pos;
            if (b5_count(q, 1 << 30) % 2) sign = -sign;
            // the walk reaches the top slot from below
            if (s.cliff) sign = -sign;
        } else {
            int q = s.out_pos;
            if ((b5_count(-1, 1 << 30) + b1_above(q)) % 2) sign = -sign;
            if (s.cliff) sign = -sign;
        }
        k.strands[si].cliff ^= 1;
    }
    return nm_single(key.src, key.dst, k, bp_int(sign));
}

NormalMorphism absorb_black(const NormalKey& key, GenKind g, int p) {
    if (g == GenKind::DownBlackDot) {
        int si = find_top_in(key, p);
        if (si < 0) throw std::runtime_error("down black dot absorb on a non in end");
        NormalKey k = key;
        k.strands[si].dots += 1;
        return nm_single(key.src, key.dst, k, bp_int(1));
    }
    int si = find_top_out(key, p);
    if (si < 0) throw std::runtime_error("black dot absorb on a non out end");
    const Strand& s = key.strands[si];

    Stack st = realize_stack(key);
    NormalMorphism out = nm_zero(key.src, key.dst);
    int sign = 1;
    int pos = p;
    bool down = true;
    int i = (int)st.size();
    while (true) {
        if (down) {
            if (i == 0) break;
            const Layer& L = st[i - 1];
            int l = (int)L.left.size();
            int gd = (int)gen_dst(L.gen).size();
            int gs = (int)gen_src(L.gen).size();
            if (pos < l) {
                --i;
                continue;
            }
            if (pos >= l + gd) {
                pos += gs - gd;
                --i;
                continue;
            }
            int local = pos - l;
            switch (L.gen) {
            case GenKind::BlackDot:
            case GenKind::DownBlackDot: --i; break;
            case GenKind::WhiteDot:
            case GenKind::DownWhiteDot:
                sign = -sign;
                --i;
                break;
            case GenKind::LCup:
            case GenKind::RCup:
                pos = l + 1 - local;
                down = false;
                break;
            case GenKind::UpCross:
            case GenKind::DownCross:
            case GenKind::LCross:
            case GenKind::RCross: {
                Corner c = local == 0 ? Corner::TL : Corner::TR;
                for (auto& [pat, ps] : slide_patterns(L.gen, c, L.left, L.right)) {
                    Stack corr(st.begin(), st.begin() + (i - 1));
                    corr.insert(corr.end(), pat.begin(), pat.end());
                    corr.insert(corr.end(), st.begin() + i, st.end());
                    out = nm_add(out, nm_scale(normalize(stack_expr(corr, key.src, key.dst)),
                                               bp_int(sign).scaled(ps)));
                }
                pos = l + 1 - local;
                --i;
                break;
            }
            default: throw std::runtime_error("unexpected layer under a walking dot");
            }
        } else {
            if (i == (int)st.size()) break;
            const Layer& L = st[i];
            int l = (int)L.left.size();
            int gs = (int)gen_src(L.gen).size();
            int gd = (int)gen_dst(L.gen).size();
            if (pos < l) {
                ++i;
                continue;
            }
            if (pos >= l + gs) {
                pos += gd - gs;
                ++i;
                continue;
            }
            int local = pos - l;
            switch (L.gen) {
            case GenKind::BlackDot:
            case GenKind::DownBlackDot: ++i; break;
            case GenKind::WhiteDot:
            case GenKind::DownWhiteDot:
                sign = -sign;
                ++i;
                break;
            case GenKind::UpCross:
            case GenKind::DownCross:
            case GenKind::LCross:
            case GenKind::RCross: {
                Corner c = local == 0 ? Corner::BL : Corner::BR;
                for (auto& [pat, ps] : slide_patterns(L.gen, c, L.left, L.right)) {
                    Stack corr(st.begin(), st.begin() + i);
                    corr.insert(corr.end(), pat.begin(), pat.end());
                    corr.insert(corr.end(), st.begin() + i + 1, st.end());
                    out = nm_add(out, nm_scale(normalize(stack_expr(corr, key.src, key.dst)),
                                               bp_int(sign).scaled(ps)));
                }
                pos = l + 1 - local;
                ++i;
                break;
            }
            default: throw std::runtime_error("unexpected layer above a walking dot");
            }
        }
    }
    if (pos != s.in_pos || down == s.in_top)
        throw std::runtime_error("dot walk missed the in end");
    NormalKey k = key;
    k.strands[si].dots += 1;
    out = nm_add(out, nm_single(key.src, key.dst, k, bp_int(sign)));
    return out;
}

NormalMorphism absorb_crossing(const NormalKey& key, GenKind g, int p) {
    Word newdst = dst_after(key, g, p);
    int ip = find_top_in(key, p);
    int ip1 = find_top_in(key, p + 1);
    int strip = -1;
    if (ip1 >= 0 && key.strands[ip1].dots > 0)
        strip = p + 1;
    else if (ip >= 0 && key.strands[ip].dots > 0)
        strip = p;

    if (strip >= 0) {
        NormalKey key1 = key;
        key1.strands[strip == p ? ip : ip1].dots -= 1;
        Corner c = strip == p ? Corner::BL : Corner::BR;
        int expos = strip == p ? p + 1 : p;
        NormalMorphism out = nm_zero(key.src, newdst);
        NormalMorphism mig = absorb_crossing(key1, g, p);
        for (const auto& [k2, poly] : mig.terms)
            out = nm_add(out, nm_scale(absorb_gen(k2, GenKind::DownBlackDot, expos), poly));
        Word l = subword(key.dst, 0, p);
        Word r = subword(key.dst, p + 2, (int)key.dst.size());
        Stack base = realize_stack(key1);
        for (auto& [pat, ps] : slide_patterns(g, c, l, r)) {
            Stack corr = base;
            corr.insert(corr.end(), pat.begin(), pat.end());
            out = nm_add(out,
                         nm_scale(normalize(stack_expr(corr, key.src, newdst)), bp_int(1).scaled(ps)));
        }
        return out;
    }

    auto top_end = [&](int pos) {
        int i = find_top_in(key, pos);
        if (i >= 0) return std::make_pair(i, true);
        i = find_top_out(key, pos);
        if (i < 0) throw std::runtime_error("crossing absorb found no strand");
        return std::make_pair(i, false);
    };
    auto [s1, in1] = top_end(p);
    auto [s2, in2] = top_end(p + 1);
    NormalKey k = key;
    k.dst = newdst;
    int sign = 1;
    if (s1 == s2) {
        std::swap(k.strands[s1].in_pos, k.strands[s1].out_pos);
    } else {
        if (in1)
            k.strands[s1].in_pos = p + 1;
        else
            k.strands[s1].out_pos = p + 1;
        if (in2)
            k.strands[s2].in_pos = p;
        else
            k.strands[s2].out_pos = p;
        if (g == GenKind::UpCross && key.strands[s1].cliff && key.strands[s2].cliff) sign = -1;
    }
    return nm_single(key.src, newdst, k, bp_int(sign));
}

NormalMorphism absorb_cap(const NormalKey& key, GenKind g, int p) {
    int dpos = g == GenKind::LCap ? p : p + 1;
    int upos = g == GenKind::LCap ? p + 1 : p;
    int yi = find_top_in(key, dpos);
    int xi = find_top_out(key, upos);
    if (yi < 0 || xi < 0) throw std::runtime_error("cap absorb found no strand");
    Word newdst = dst_after(key, g, p);

    if (yi == xi) {
        const Strand& s = key.strands[yi];
        int cl = s.cliff, d = s.dots;
        NormalMorphism out = nm_zero(key.src, newdst);
        if (cl && d % 2) return out;
        bool cw = g == GenKind::RCap;
        NormalKey base = key;
        base.strands.erase(base.strands.begin() + yi);
        shift_tops(base, p + 2, -2);
        base.dst = newdst;
        base.canonicalize();
        if (!cl) {
            BubblePoly v = eval_loop(cw, 0, d, 1);
            if (!v.is_zero()) nm_add_term(out, base, v);
        }
        if (d >= 1) {
            Stack realized = realize_stack(base);
            for (int j = p; j < (int)newdst.size(); ++j) {
                Word L = subword(newdst, 0, j);
                Word R = subword(newdst, j + 1, (int)newdst.size());
                for (auto& piece : transport_stacks(cw, newdst[j], L, R, d, cl)) {
                    Stack corr = realized;
                    corr.insert(corr.end(), piece.stack.begin(), piece.stack.end());
                    out = nm_add(out, nm_scale(normalize(stack_expr(corr, key.src, newdst)),
                                               bp_int(1).scaled(piece.sign)));
                }
            }
        }
        return out;
    }

    if (key.strands[yi].dots > 0) {
        NormalKey key1 = key;
        key1.strands[yi].dots -= 1;
        NormalMorphism walked = absorb_black(key1, GenKind::BlackDot, upos);
        NormalMorphism out = nm_zero(key.src, newdst);
        for (const auto& [k2, poly] : walked.terms)
            out = nm_add(out, nm_scale(absorb_cap(k2, g, p), poly));
        return out;
    }

    const Strand& X = key.strands[xi];
    const Strand& Y = key.strands[yi];
    int sign = 1;
    int newcliff = Y.cliff;
    if (X.cliff) {
        int count = 0;
        if (Y.out_top) {
            int lo = std::min(upos, Y.out_pos), hi = std::max(upos, Y.out_pos);
            for (const Strand& s : key.strands)
                if (s.out_top && s.cliff && s.out_pos > lo && s.out_pos < hi) ++count;
            if (Y.cliff) ++count;
        } else {
            for (const Strand& s : key.strands)
                if (s.out_top && s.cliff && s.out_pos < upos) ++count;
            for (const Strand& s : key.strands)
                if (!s.out_top && s.cliff && s.out_pos > Y.out_pos) ++count;
            if (Y.cliff) sign = -sign;
        }
        if (count % 2) sign = -sign;
        newcliff ^= 1;
    }
    Strand merged;
    merged.in_top = X.in_top;
    merged.in_pos = X.in_pos;
    merged.out_top = Y.out_top;
    merged.out_pos = Y.out_pos;
    merged.cliff = newcliff;
    merged.dots = X.dots;
    NormalKey k = key;
    std::vector<int> kill = {yi, xi};
    std::sort(kill.begin(), kill.end());
    k.strands.erase(k.strands.begin() + kill[1]);
    k.strands.erase(k.strands.begin() + kill[0]);
    k.strands.push_back(merged);
    shift_tops(k, p + 2, -2);
    k.dst = newdst;
    return nm_single(key.src, newdst, k, bp_int(sign));
}

NormalMorphism absorb_gen(const NormalKey& key, GenKind g, int p) {
    switch (g) {
    case GenKind::LCup:
    case GenKind::RCup: return absorb_cup(key, g, p);
    case GenKind::LCap:
    case GenKind::RCap: return absorb_cap(key, g, p);
    case GenKind::WhiteDot:
    case GenKind::DownWhiteDot: return absorb_white(key, g, p);
    case GenKind::BlackDot:
    case GenKind::DownBlackDot: return absorb_black(key, g, p);
    case GenKind::UpCross:
    case GenKind::DownCross:
    case GenKind::LCross:
    case GenKind::RCross: return absorb_crossing(key, g, p);
    }
    throw std::invalid_argument("unknown generator");
}

} // namespace

std::vector<std::pair<Expr, GRat>> transport_corrections(bool clockwise, Dir shield,
                                                         const Word& left, const Word& right,
                                                         int dots, int whites) {
    std::vector<std::pair<Expr, GRat>> out;
    Word boundary = left;
    boundary.push_back(shield);
    boundary.insert(boundary.end(), right.begin(), right.end());
    for (auto& piece : transport_stacks(clockwise, shield, left, right, dots, whites))
        out.emplace_back(stack_expr(piece.stack, boundary, boundary), piece.sign);
    return out;
}

NormalMorphism normalize(const Expr& e) {
    NormalMorphism out = nm_zero(e.src, e.dst);
    for (const auto& [stack, coeff] : e.terms) {
        NormalMorphism cur = nm_identity(e.src);
        for (const Layer& l : stack) {
            Word next_dst = wcat(wcat(l.left, gen_dst(l.gen)), l.right);
            NormalMorphism next = nm_zero(cur.src, next_dst);
            for (const auto& [key, poly] : cur.terms) {
                NormalMorphism piece = absorb_gen(key, l.gen, (int)l.left.size());
                for (const auto& [k2, p2] : piece.terms) nm_add_term(next, k2, p2 * poly);
            }
            cur = std::move(next);
        }
        for (const auto& [k2, p2] : cur.terms) nm_add_term(out, k2, p2.scaled(coeff));
    }
    return out;
}

NormalMorphism nm_compose(const NormalMorphism& f, const NormalMorphism& g) {
    return normalize(expr_compose(nm_to_expr(f), nm_to_expr(g)));
}

NormalMorphism nm_tensor(const NormalMorphism& f, const NormalMorphism& g) {
    return normalize(expr_tensor(nm_to_expr(f), nm_to_expr(g)));
}

int black_degree(const NormalMorphism& m) {
    int deg = 0;
    for (const auto& [k, poly] : m.terms)
        for (const auto& [mono, c] : poly.terms()) {
            int d = k.total_dots() + bubble_degree(mono);
            deg = std::max(deg, d);
        }
    return deg;
}

std::vector<NormalKey> enumerate_keys(const Word& src, const Word& dst, int max_dots_total,
                                      int per_strand_bound) {
    struct End {
        bool top;
        int pos;
    };
    std::vector<End> ins, outs;
    for (int i = 0; i < (int)src.size(); ++i)
        if (src[i] == Dir::Up)
            ins.push_back({false, i});
        else
            outs.push_back({false, i});
    for (int j = 0; j < (int)dst.size(); ++j)
        if (dst[j] == Dir::Down)
            ins.push_back({true, j});
        else
            outs.push_back({true, j});
    std::vector<NormalKey> result;
    if (ins.size() != outs.size()) return result;
    const int n = (int)ins.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        NormalKey base;
        base.src = src;
        base.dst = dst;
        for (int i = 0; i < n; ++i) {
            Strand s;
            s.in_top = ins[i].top;
            s.in_pos = ins[i].pos;
            s.out_top = outs[perm[i]].top;
            s.out_pos = outs[perm[i]].pos;
            base.strands.push_back(s);
        }
        std::vector<NormalKey> batch = {base};
        for (int i = 0; i < n; ++i) {
            std::vector<NormalKey> next;
            for (const NormalKey& k : batch)
                for (int cl = 0; cl < 2; ++cl) {
                    NormalKey k2 = k;
                    k2.strands[i].cliff = cl;
                    next.push_back(k2);
                }
            batch = std::move(next);
        }
        for (int i = 0; i < n; ++i) {
            std::vector<NormalKey> next;
            for (const NormalKey& k : batch) {
                int used = k.total_dots();
                for (int d = 0; d <= per_strand_bound && used + d <= max_dots_total; ++d) {
                    NormalKey k2 = k;
                    k2.strands[i].dots = d;
                    next.push_back(k2);
                }
            }
            batch = std::move(next);
        }
        for (NormalKey& k : batch) {
            k.canonicalize();
            result.push_back(std::move(k));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

long dim_filtered(const Word& src, const Word& dst, int k) {
    // number of bubble monomials (multisets of odd indices) of degree at most m
    auto monomial_count = [](int m) {
        if (m < 0) return 0L;
        std::vector<long> parts(m + 1, 0);
        parts[0] = 1;
        for (int odd = 1; odd <= m; odd += 2)
            for (int s = odd; s <= m; ++s) parts[s] += parts[s - odd];
        long total = 0;
        for (int s = 0; s <= m; ++s) total += parts[s];
        return total;
    };
    long total = 0;
    for (const NormalKey& key : enumerate_keys(src, dst, k, k))
        total += monomial_count(k - key.total_dots());
    return total;
}

} // namespace obc

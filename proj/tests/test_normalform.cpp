#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "obc/normal.hpp"
#include "obc/parse.hpp"
#include "obc/qn.hpp"

#include <random>

using namespace obc;

namespace {

NormalMorphism nm_str(const std::string& s) { return normalize(parse_expr(s)); }

SuperMatrix psi_str(const QnContext& ctx, const std::string& s, const std::string& mod) {
    return psi_eval(ctx, parse_expr(s), word_parse(mod));
}

BubblePoly bp(int v) { return BubblePoly(GRat(v)); }

// counterclockwise loop, white drawn below the dots on the upward leg
Expr ccw_loop(int dots, int whites) {
    Stack st;
    st.push_back(Layer{{}, GenKind::RCup, {}});
    for (int i = 0; i < whites; ++i)
        st.push_back(Layer{{Dir::Down}, GenKind::WhiteDot, {}});
    for (int i = 0; i < dots; ++i)
        st.push_back(Layer{{Dir::Down}, GenKind::BlackDot, {}});
    st.push_back(Layer{{}, GenKind::LCap, {}});
    Expr e;
    e.add_term(st, GRat(1));
    return e;
}

// clockwise loop, white drawn above the dots on the upward leg
Expr cw_loop(int dots, int whites) {
    Stack st;
    st.push_back(Layer{{}, GenKind::LCup, {}});
    for (int i = 0; i < dots; ++i)
        st.push_back(Layer{{}, GenKind::BlackDot, {Dir::Down}});
    for (int i = 0; i < whites; ++i)
        st.push_back(Layer{{}, GenKind::WhiteDot, {Dir::Down}});
    st.push_back(Layer{{}, GenKind::RCap, {}});
    Expr e;
    e.add_term(st, GRat(1));
    return e;
}

Expr random_expr_from(std::mt19937_64& rng, const Word& start, int max_layers, int max_width) {
    Expr e = expr_identity(start);
    std::uniform_int_distribution<int> layers(1, max_layers);
    for (int j = layers(rng); j > 0; --j) {
        Word cur = e.dst;
        std::vector<Layer> options;
        for (int gi = 0; gi < 12; ++gi) {
            GenKind g = static_cast<GenKind>(gi);
            Word gs = gen_src(g);
            Word gd = gen_dst(g);
            if (cur.size() - gs.size() + gd.size() > (size_t)max_width) continue;
            for (size_t p = 0; p + gs.size() <= cur.size(); ++p) {
                if (std::equal(gs.begin(), gs.end(), cur.begin() + p)) {
                    options.push_back(Layer{Word(cur.begin(), cur.begin() + p), g,
                                            Word(cur.begin() + p + gs.size(), cur.end())});
                }
            }
        }
        if (options.empty()) break;
        std::uniform_int_distribution<size_t> pick(0, options.size() - 1);
        Layer l = options[pick(rng)];
        e = expr_compose(expr_layer(l.left, l.gen, l.right), e);
    }
    std::uniform_int_distribution<int> num(-3, 3);
    GRat c(num(rng));
    if (c.is_zero()) c = GRat(1);
    return e.scaled(c);
}

} // namespace

TEST_CASE("matching counts and filtered dimensions") {
    Word u1 = word_parse("u");
    CHECK(enumerate_keys(u1, u1, 0, 0).size() == 2);
    Word u2 = word_parse("uu");
    CHECK(enumerate_keys(u2, u2, 0, 0).size() == 8);
    Word u3 = word_parse("uuu");
    CHECK(enumerate_keys(u3, u3, 0, 0).size() == 48);

    CHECK(enumerate_keys(word_parse("ud"), word_parse("du"), 0, 0).size() == 8);
    CHECK(enumerate_keys({}, word_parse("ud"), 0, 0).size() == 2);
    CHECK(enumerate_keys(u1, word_parse("d"), 0, 0).empty());

    CHECK(dim_filtered({}, {}, 0) == 1);
    CHECK(dim_filtered({}, {}, 3) == 5);
    CHECK(dim_filtered(u1, u1, 0) == 2);
    CHECK(dim_filtered(u1, u1, 1) == 6);
}

TEST_CASE("realized matchings compose and normalize back to themselves") {
    std::vector<std::pair<Word, Word>> shapes = {
        {word_parse("u"), word_parse("u")},   {word_parse("d"), word_parse("d")},
        {word_parse("ud"), word_parse("ud")}, {word_parse("ud"), word_parse("du")},
        {{}, word_parse("ud")},               {word_parse("du"), {}},
        {word_parse("uu"), word_parse("uu")}, {word_parse("uud"), word_parse("u")},
    };
    for (const auto& [src, dst] : shapes) {
        for (const NormalKey& k : enumerate_keys(src, dst, 2, 2)) {
            Expr e = realize(k);
            for (const auto& [st, c] : e.terms) {
                CHECK(stack_composable(st));
                CHECK(stack_src(st, src) == src);
                CHECK(stack_dst(st, dst) == dst);
            }
            NormalMorphism m = normalize(e);
            REQUIRE(m.terms.size() == 1);
            CHECK(m.terms.begin()->first == k);
            CHECK(m.terms.begin()->second == bp(1));
        }
    }
}

TEST_CASE("white dot cancellation and zigzags") {
    Word u1 = word_parse("u");
    Word d1 = word_parse("d");
    CHECK(nm_str("c . c") == nm_identity(u1));
    CHECK(nm_str("cd . cd") == nm_scale(nm_identity(d1), bp(-1)));

    CHECK(nm_str("id(u)*cap . cup*id(u)") == nm_identity(u1));
    CHECK(nm_str("rcap*id(u) . id(u)*rcup") == nm_identity(u1));
    CHECK(nm_str("id(d)*rcap . rcup*id(d)") == nm_identity(d1));
    CHECK(nm_str("cap*id(d) . id(d)*cup") == nm_identity(d1));

    // curls exchange the two cup flavours
    CHECK(nm_str("ls . cup") == nm_str("rcup"));
    CHECK(nm_str("rs . rcup") == nm_str("cup"));

    // the odd interchange of two white dots
    CHECK(nm_str("c*id(u) . id(u)*c") == nm_scale(nm_str("id(u)*c . c*id(u)"), bp(-1)));

    // a white dot bent across a cap
    CHECK(nm_str("cap . id(d)*c") == nm_str("cap . cd*id(u)"));
    CHECK(nm_str("rcap . c*id(d)") == nm_str("rcap . id(u)*cd"));
}

TEST_CASE("free loops evaluate to bubble scalars") {
    NormalMorphism b1 = normalize(expr_bubble(1));
    REQUIRE(b1.terms.size() == 1);
    CHECK(b1.terms.begin()->second == BubblePoly::generator(1));
    CHECK(normalize(expr_bubble(2)).is_zero());
    NormalMorphism b3 = normalize(expr_bubble(3));
    REQUIRE(b3.terms.size() == 1);
    CHECK(b3.terms.begin()->second == BubblePoly::generator(3));

    CHECK(normalize(ccw_loop(0, 0)).is_zero());
    CHECK(normalize(ccw_loop(0, 1)).is_zero());
    CHECK(normalize(ccw_loop(1, 1)).is_zero());
    CHECK(normalize(ccw_loop(2, 1)).is_zero());

    NormalMorphism p1 = normalize(cw_loop(1, 0));
    REQUIRE(p1.terms.size() == 1);
    CHECK(p1.terms.begin()->second == delta_prime(1));
    CHECK(normalize(cw_loop(2, 0)).is_zero());
    NormalMorphism p3 = normalize(cw_loop(3, 0));
    REQUIRE(p3.terms.size() == 1);
    CHECK(p3.terms.begin()->second == delta_prime(3));
}

TEST_CASE("loops tensored with identities pick up transport terms") {
    Word u1 = word_parse("u");
    NormalMorphism left = normalize(expr_tensor(expr_bubble(1), expr_identity(u1)));
    REQUIRE(left.terms.size() == 1);
    CHECK(left.terms.begin()->first == identity_key(u1));
    CHECK(left.terms.begin()->second == BubblePoly::generator(1) + bp(2));

    NormalMorphism right = normalize(expr_tensor(expr_identity(u1), expr_bubble(1)));
    REQUIRE(right.terms.size() == 1);
    CHECK(right.terms.begin()->first == identity_key(u1));
    CHECK(right.terms.begin()->second == BubblePoly::generator(1));
}

TEST_CASE("slide identities hold in the representation and in normal form") {
    const std::vector<std::pair<std::string, std::string>> rules = {
        {"x*id(u) . s", "s . id(u)*x + id(uu) + (-1)*(c*c)"},
        {"id(u)*x . s", "s . x*id(u) + (-1)*id(uu) + (-1)*(c*c)"},
        {"s . id(u)*x", "x*id(u) . s + (-1)*id(uu) + c*c"},
        {"s . x*id(u)", "id(u)*x . s + id(uu) + c*c"},
        {"rs . xd*id(u)", "id(u)*xd . rs + cup . cap + c*id(d) . cup . cap . id(d)*c"},
        {"x*id(d) . rs", "rs . id(d)*x + (-1)*(cup . cap) + c*id(d) . cup . cap . id(d)*c"},
        {"id(u)*xd . rs", "rs . xd*id(u) + (-1)*(cup . cap) + (-1)*(c*id(d) . cup . cap . id(d)*c)"},
        {"rs . id(d)*x", "x*id(d) . rs + cup . cap + (-1)*(c*id(d) . cup . cap . id(d)*c)"},
        {"ls . id(u)*xd", "xd*id(u) . ls + (-1)*(rcup . rcap) + (-1)*(id(d)*c . rcup . rcap . c*id(d))"},
        {"id(d)*x . ls", "ls . x*id(d) + rcup . rcap + (-1)*(id(d)*c . rcup . rcap . c*id(d))"},
        {"xd*id(u) . ls", "ls . id(u)*xd + rcup . rcap + id(d)*c . rcup . rcap . c*id(d)"},
        {"ls . x*id(d)", "id(d)*x . ls + (-1)*(rcup . rcap) + id(d)*c . rcup . rcap . c*id(d)"},
        {"ds . id(d)*xd", "xd*id(d) . ds + id(dd) + cd*cd"},
        {"ds . xd*id(d)", "id(d)*xd . ds + (-1)*id(dd) + cd*cd"},
        {"xd*id(d) . ds", "ds . id(d)*xd + (-1)*id(dd) + (-1)*(cd*cd)"},
        {"id(d)*xd . ds", "ds . xd*id(d) + id(dd) + (-1)*(cd*cd)"},
    };
    for (int n : {1, 2}) {
        QnContext ctx(n);
        for (const std::string& mod : {std::string(""), std::string("u")}) {
            for (const auto& [lhs, rhs] : rules) {
                CAPTURE(lhs);
                CHECK(psi_str(ctx, lhs, mod) == psi_str(ctx, rhs, mod));
            }
        }
    }
    for (const auto& [lhs, rhs] : rules) {
        CAPTURE(lhs);
        CHECK(nm_str(lhs) == nm_str(rhs));
    }
}

TEST_CASE("loop transport identities hold in the representation") {
    QnContext ctx(2);
    for (bool cw : {false, true}) {
        for (Dir shield : {Dir::Up, Dir::Down}) {
            Word sw = {shield};
            Expr id_s = expr_identity(sw);
            for (int d = 1; d <= 3; ++d) {
                for (int w = 0; w <= 1; ++w) {
                    CAPTURE(cw);
                    CAPTURE(d);
                    CAPTURE(w);
                    Expr loop = cw ? cw_loop(d, w) : ccw_loop(d, w);
                    SuperMatrix lhs = psi_eval(ctx, expr_tensor(loop, id_s), {});
                    SuperMatrix rhs = psi_eval(ctx, expr_tensor(id_s, loop), {});
                    for (const auto& [corr, sign] : transport_corrections(cw, shield, {}, {}, d, w))
                        rhs = rhs + psi_eval(ctx, corr, {}).scaled(sign);
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("normal forms agree with the representation on random expressions") {
    QnContext ctx(2);
    std::mt19937_64 rng(20240811);
    std::vector<Word> starts = {word_parse("u"), word_parse("d"), word_parse("ud"),
                                word_parse("uu"), word_parse("du")};
    int checked = 0;
    while (checked < 40) {
        Word start = starts[checked % starts.size()];
        Expr e = random_expr_from(rng, start, 6, 4);
        NormalMorphism m = normalize(e);
        CHECK(black_degree(m) <= black_degree(e));
        SuperMatrix direct = psi_eval(ctx, e, {});
        SuperMatrix vianorm = psi_eval(ctx, nm_to_expr(m), {});
        CHECK(direct == vianorm);
        ++checked;
    }
}

TEST_CASE("composition and tensor agree with stack level operations") {
    std::mt19937_64 rng(911);
    std::vector<Word> starts = {word_parse("u"), word_parse("d"), word_parse("ud")};
    for (int trial = 0; trial < 10; ++trial) {
        Word start = starts[trial % starts.size()];
        Expr g = random_expr_from(rng, start, 3, 4);
        Expr f = random_expr_from(rng, g.dst, 3, 4);
        NormalMorphism direct = normalize(expr_compose(f, g));
        NormalMorphism staged = nm_compose(normalize(f), normalize(g));
        CHECK(direct == staged);
    }
    for (int trial = 0; trial < 6; ++trial) {
        Expr f = random_expr_from(rng, starts[trial % starts.size()], 3, 3);
        Expr g = random_expr_from(rng, starts[(trial + 1) % starts.size()], 3, 3);
        CHECK(normalize(expr_tensor(f, g)) == nm_tensor(normalize(f), normalize(g)));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "obc/diagram.hpp"
#include "obc/parse.hpp"

#include <random>

using namespace obc;

TEST_CASE("generator typing") {
    CHECK(gen_src(GenKind::LCup).empty());
    CHECK(word_str(gen_dst(GenKind::LCup)) == "ud");
    CHECK(word_str(gen_src(GenKind::LCap)) == "du");
    CHECK(word_str(gen_src(GenKind::RCup)) == "");
    CHECK(word_str(gen_dst(GenKind::RCup)) == "du");
    CHECK(word_str(gen_src(GenKind::RCap)) == "ud");
    CHECK(word_str(gen_src(GenKind::LCross)) == "ud");
    CHECK(word_str(gen_dst(GenKind::LCross)) == "du");
    CHECK(word_str(gen_src(GenKind::RCross)) == "du");
    CHECK(word_str(gen_dst(GenKind::RCross)) == "ud");
    CHECK(word_str(gen_src(GenKind::DownCross)) == "dd");
    CHECK(gen_parity(GenKind::WhiteDot) == 1);
    CHECK(gen_parity(GenKind::DownWhiteDot) == 1);
    CHECK(gen_parity(GenKind::BlackDot) == 0);
    CHECK(gen_parity(GenKind::UpCross) == 0);
    for (int i = 0; i < 12; ++i) {
        GenKind g = static_cast<GenKind>(i);
        CHECK(gen_from_name(gen_name(g)) == g);
    }
}

TEST_CASE("composition") {
    Expr c = expr_gen(GenKind::WhiteDot);
    Expr idu = expr_identity(word_parse("u"));
    CHECK(expr_compose(idu, c) == c);
    CHECK(expr_compose(c, idu) == c);

    bool threw = false;
    try {
        expr_compose(expr_gen(GenKind::LCap), expr_gen(GenKind::LCup));
    } catch (const std::invalid_argument& e) {
        threw = true;
        std::string msg = e.what();
        CHECK(msg.find("ud") != std::string::npos);
        CHECK(msg.find("du") != std::string::npos);
    }
    CHECK(threw);

    Expr x = expr_gen(GenKind::BlackDot);
    Expr sum = x + c;
    CHECK(expr_compose(sum, x) == expr_compose(x, x) + expr_compose(c, x));
}

TEST_CASE("tensor factorization order") {
    Expr c = expr_gen(GenKind::WhiteDot);
    Expr idu = expr_identity(word_parse("u"));
    Expr lhs = expr_tensor(c, c);
    Expr rhs = expr_compose(expr_tensor(c, idu), expr_tensor(idu, c));
    CHECK(lhs == rhs);
    // the other stacking order is a different raw expression
    Expr other = expr_compose(expr_tensor(idu, c), expr_tensor(c, idu));
    CHECK(lhs != other);

    Expr empty = expr_identity({});
    CHECK(expr_tensor(empty, c) == c);
    CHECK(expr_tensor(c, empty) == c);
}

TEST_CASE("degree and parity") {
    Expr x = expr_gen(GenKind::BlackDot);
    Expr c = expr_gen(GenKind::WhiteDot);
    Expr e = x;
    for (int j = 0; j < 6; ++j) e = expr_compose(e, x);
    CHECK(black_degree(e) == 7);
    CHECK(parity(e) == 0);
    CHECK(black_degree(expr_identity(word_parse("uu"))) == 0);
    CHECK(parity(expr_identity(word_parse("uu"))) == 0);
    Expr ccc = expr_compose(c, expr_compose(c, c));
    CHECK(parity(ccc) == 1);
    CHECK_THROWS_AS(parity(c + expr_identity(word_parse("u"))), std::invalid_argument);
    CHECK(black_degree(e + expr_identity(word_parse("u"))) == 7);
}

TEST_CASE("parsing") {
    Expr bub = parse_expr("cap . ls . cup");
    CHECK(bub.src.empty());
    CHECK(bub.dst.empty());
    CHECK(bub.terms.size() == 1);

    Expr xr = parse_expr("x * id(u)");
    Stack s = xr.terms.begin()->first;
    REQUIRE(s.size() == 1);
    CHECK(s[0].left.empty());
    CHECK(s[0].gen == GenKind::BlackDot);
    CHECK(word_str(s[0].right) == "u");

    Expr cc = parse_expr("c . c");
    CHECK(cc.terms.begin()->first.size() == 2);
    CHECK(word_str(cc.src) == "u");

    CHECK(parse_expr("D(2)") == expr_bubble(2));
    CHECK(expr_bubble(2).terms.begin()->first.size() == 4);

    Expr sc = parse_expr("(3/2+1i)");
    CHECK(sc.terms.begin()->second == grat_parse("3/2+i"));

    CHECK(parse_expr("x*c . s") ==
          expr_compose(expr_tensor(parse_expr("x"), parse_expr("c")), parse_expr("s")));
    CHECK(parse_expr("x . c + c . x") ==
          expr_compose(parse_expr("x"), parse_expr("c")) +
              expr_compose(parse_expr("c"), parse_expr("x")));
    CHECK(parse_expr("(1+1i)*x - x") == parse_expr("x").scaled(grat_i()));
}

TEST_CASE("parse errors carry positions") {
    for (const char* bad : {"cap . cup", "foo", "x +", "id(uq)", "(1/2", "x * * c"}) {
        bool threw = false;
        try {
            parse_expr(bad);
        } catch (const std::invalid_argument& e) {
            threw = true;
            CHECK(std::string(e.what()).find("parse error at 1:") != std::string::npos);
        }
        CHECK(threw);
    }
}

namespace {

// grow a random well-typed stack upward from a random starting word
Expr random_expr(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> wlen(0, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    for (int j = wlen(rng); j > 0; --j) w.push_back(coin(rng) ? Dir::Up : Dir::Down);
    Expr e = expr_identity(w);
    std::uniform_int_distribution<int> layers(1, 5);
    for (int j = layers(rng); j > 0; --j) {
        Word cur = e.dst;
        std::vector<Layer> options;
        for (int gi = 0; gi < 12; ++gi) {
            GenKind g = static_cast<GenKind>(gi);
            Word gs = gen_src(g);
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
    c = c + grat_i() * GRat(num(rng));
    if (c.is_zero()) c = GRat(1);
    return e.scaled(c);
}

} // namespace

TEST_CASE("print parse round trip") {
    std::mt19937_64 rng(20260814);
    for (int trial = 0; trial < 120; ++trial) {
        Expr e = random_expr(rng);
        Expr f = random_expr(rng);
        if (e.src == f.src && e.dst == f.dst) e = e + f;
        CAPTURE(print_expr(e));
        Expr back = parse_expr(print_expr(e));
        CHECK(back == e);
    }
}

TEST_CASE("stack validation") {
    Stack good{Layer{{}, GenKind::LCup, {}}, Layer{{}, GenKind::LCap, {}}};
    CHECK(!stack_composable(good));
    Stack ok{Layer{{}, GenKind::LCup, {}}, Layer{{}, GenKind::LCross, {}}};
    CHECK(stack_composable(ok));
    CHECK_THROWS_AS(expr_from_stack(good), std::invalid_argument);
    CHECK(word_str(expr_from_stack(ok).dst) == "du");
}

TEST_CASE("json export") {
    Expr e = parse_expr("(1/2)*cap . ls . cup + D(1)");
    auto j = expr_to_json(e);
    CHECK(j["src"] == "");
    CHECK(j["dst"] == "");
    CHECK(j["terms"].size() == 2);
    CHECK(j["terms"][0]["stack"][0].contains("gen"));
}

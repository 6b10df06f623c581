#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "obc/bubble.hpp"
#include "obc/grat.hpp"
#include "obc/sympoly.hpp"

using namespace obc;

TEST_CASE("gaussian rational arithmetic") {
    GRat one(1);
    GRat i = grat_i();
    CHECK((one + i) * (one - i) == GRat(2));
    CHECK(i * i == GRat(-1));
    CHECK(i.inv() == -i);
    CHECK(grat_parse("1/3") + grat_parse("1/6") == grat_parse("1/2"));
    CHECK((one + i).inv() == grat_parse("1/2-1/2*i"));
    CHECK_THROWS_AS(GRat(0).inv(), std::invalid_argument);
    CHECK_THROWS_AS(one / GRat(0), std::invalid_argument);
    CHECK(GRat(3).is_integer());
    CHECK(!grat_parse("1/2").is_integer());
    CHECK(!i.is_integer());
}

TEST_CASE("gaussian rational round trip") {
    for (const char* s : {"0", "1", "-1", "2/3", "-5/7", "i", "-i", "1/2*i",
                          "1+i", "-1/2+3/4*i", "2-i", "-2/3-1/3*i"}) {
        GRat v = grat_parse(s);
        CHECK(grat_parse(grat_to_string(v)) == v);
    }
    CHECK(grat_to_string(grat_parse("2/4")) == "1/2");
    CHECK_THROWS_AS(grat_parse("1/0"), std::invalid_argument);
}

TEST_CASE("bubble polynomial ring") {
    BubblePoly d1 = BubblePoly::generator(1);
    BubblePoly d3 = BubblePoly::generator(3);
    CHECK(d1.degree() == 1);
    CHECK((d1 * d3).degree() == 4);
    CHECK(bubble_mul(d1, d3) == bubble_mul(d3, d1));
    CHECK((d1 - d1).is_zero());
    CHECK_THROWS_AS(BubblePoly::generator(2), std::invalid_argument);
    CHECK_THROWS_AS(BubblePoly::generator(-1), std::invalid_argument);

    BubblePoly p = d1 * d1 + d3.scaled(GRat(-2)) + BubblePoly(GRat(5));
    BubblePoly q = d3 * d3 * d1 - d1.scaled(grat_i());
    CHECK((p * q).degree() == p.degree() + q.degree());
}

TEST_CASE("clockwise bubbles in counterclockwise generators") {
    BubblePoly d1 = BubblePoly::generator(1);
    BubblePoly d3 = BubblePoly::generator(3);
    BubblePoly d5 = BubblePoly::generator(5);
    CHECK(delta_prime(0).is_zero());
    CHECK(delta_prime(2).is_zero());
    CHECK(delta_prime(8).is_zero());
    CHECK(delta_prime(1) == d1);
    CHECK(delta_prime(3) == d3 - d1 * d1);
    CHECK(delta_prime(5) == d5 - (d1 * d3).scaled(GRat(2)) + d1 * d1 * d1);
    CHECK_THROWS_AS(delta_prime(-1), std::invalid_argument);
}

TEST_CASE("bubble pairing identity") {
    // sum over i of D_{2i-1} * delta_prime(k-2i) vanishes, reading the
    // boundary cases D_{-1} as 1 and delta_prime(-1) as -1
    for (int k = 1; k <= 9; k += 2) {
        BubblePoly acc = delta_prime(k);
        for (int i = 1; 2 * i - 1 <= k; ++i) {
            if (k - 2 * i == -1) {
                acc = acc - BubblePoly::generator(2 * i - 1);
            } else {
                acc = acc + BubblePoly::generator(2 * i - 1) * delta_prime(k - 2 * i);
            }
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("bubble polynomial round trip") {
    BubblePoly p = bubble_parse("3*D1^2*D3 - 1");
    CHECK(bubble_to_string(p) == "3*D1^2*D3 - 1");
    for (const char* s : {"0", "1", "-D1", "D1^2", "2/3*D3 + i*D1",
                          "(1+i)*D1*D3^2 - 5", "D5 - 2*D1*D3 + D1^3"}) {
        BubblePoly v = bubble_parse(s);
        CHECK(bubble_parse(bubble_to_string(v)) == v);
    }
    CHECK_THROWS_AS(bubble_parse("D2"), std::invalid_argument);
    CHECK_THROWS_AS(bubble_parse("D1 +"), std::invalid_argument);
    CHECK(bubble_parse("D1*D1") == bubble_parse("D1^2"));
}

TEST_CASE("elementary from complete homogeneous") {
    SymPoly h1 = SymPoly::generator(1);
    SymPoly h2 = SymPoly::generator(2);
    SymPoly h3 = SymPoly::generator(3);
    CHECK(e_from_h(0) == SymPoly(GRat(1)));
    CHECK(e_from_h(1) == h1);
    CHECK(e_from_h(2) == h1 * h1 - h2);
    CHECK(e_from_h(3) == h1 * h1 * h1 - (h1 * h2).scaled(GRat(2)) + h3);
    // coefficient of u^r in e(u)h(-u) vanishes for r >= 1
    for (int r = 1; r <= 6; ++r) {
        SymPoly acc;
        for (int s = 0; s <= r; ++s) {
            SymPoly t = e_from_h(s);
            if (s < r) t = t * SymPoly::generator(r - s);
            acc = (s % 2 == 0) ? acc + t : acc - t;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("power sums in the h generators") {
    SymPoly h1 = SymPoly::generator(1);
    SymPoly h2 = SymPoly::generator(2);
    SymPoly h3 = SymPoly::generator(3);
    CHECK(powersum_eval(1, 3) == h1);
    CHECK(powersum_eval(2, 3) == h2.scaled(GRat(2)) - h1 * h1);
    CHECK(powersum_eval(3, 3) == h3.scaled(GRat(3)) - (h1 * h2).scaled(GRat(3)) + h1 * h1 * h1);
    CHECK(powersum_eval(2, 1) == h1 * h1);
    CHECK(powersum_eval(3, 2) == (h1 * h2).scaled(GRat(3)) - (h1 * h1 * h1).scaled(GRat(2)));
    CHECK_THROWS_AS(powersum_eval(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(powersum_eval(2, 0), std::invalid_argument);
}

namespace {

// evaluate a symmetric polynomial at h-values taken from the points x=(1,2,3)
GRat eval_at_123(const SymPoly& p) {
    // h1, h2, h3 for three variables 1, 2, 3
    const GRat hv[3] = {GRat(6), GRat(25), GRat(90)};
    GRat total(0);
    for (const auto& [m, c] : p.terms()) {
        REQUIRE(m.size() <= 3);
        GRat t = c;
        for (size_t i = 0; i < m.size(); ++i) {
            for (int e = 0; e < m[i]; ++e) t = t * hv[i];
        }
        total += t;
    }
    return total;
}

} // namespace

TEST_CASE("power sums agree with direct evaluation") {
    for (int k = 1; k <= 5; ++k) {
        long pk = 0;
        for (long x : {1L, 2L, 3L}) {
            long xe = 1;
            for (int j = 0; j < k; ++j) xe *= x;
            pk += xe;
        }
        CHECK(eval_at_123(powersum_eval(k, 3)) == GRat(pk));
    }
}

TEST_CASE("symmetric polynomial round trip") {
    SymPoly p = sym_parse("h1^2 - h2");
    CHECK(sym_to_string(p) == "h1^2 - h2");
    for (const char* s : {"0", "1", "-h1", "h1*h3 + 2*h2^2", "(1/2+i)*h2 - 3"}) {
        SymPoly v = sym_parse(s);
        CHECK(sym_parse(sym_to_string(v)) == v);
    }
    CHECK(sym_parse("h1*h1") == sym_parse("h1^2"));
    CHECK_THROWS_AS(sym_parse("h0"), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "obc/normal.hpp"
#include "obc/sergeev.hpp"
#include "obc/supermatrix.hpp"

#include <random>

using namespace obc;

namespace {

SergElement serg_word(int r, const std::string& letters) {
    SergElement acc = serg_one(r);
    for (size_t k = 0; k + 1 < letters.size(); k += 2) {
        int i = letters[k + 1] - '0';
        SergElement g = letters[k] == 's' ? serg_gen_s(r, i) : serg_gen_c(r, i);
        acc = serg_mul(acc, g);
    }
    return acc;
}

ASergElement aserg_word(int r, const std::string& letters) {
    ASergElement acc = aserg_one(r);
    for (size_t k = 0; k + 1 < letters.size(); k += 2) {
        int i = letters[k + 1] - '0';
        ASergElement g = letters[k] == 's'   ? aserg_gen_s(r, i)
                         : letters[k] == 'c' ? aserg_gen_c(r, i)
                                             : aserg_gen_x(r, i);
        acc = aserg_mul(acc, g);
    }
    return acc;
}

ASergMono random_mono(std::mt19937_64& rng, int r, int max_exp) {
    std::uniform_int_distribution<int> exp(0, max_exp);
    std::uniform_int_distribution<int> bit(0, 1);
    ASergMono m;
    m.a.resize(r);
    m.b.resize(r);
    m.w.resize(r);
    for (int k = 0; k < r; ++k) {
        m.a[k] = exp(rng);
        m.b[k] = bit(rng);
        m.w[k] = k;
    }
    std::shuffle(m.w.begin(), m.w.end(), rng);
    return m;
}

ASergElement random_element(std::mt19937_64& rng, int r, int max_exp, int nterms) {
    std::uniform_int_distribution<int> coef(-3, 3);
    ASergElement e = aserg_zero(r);
    for (int k = 0; k < nterms; ++k)
        aserg_add_term(e, random_mono(rng, r, max_exp), GRat(coef(rng)));
    return e;
}

long factorial(int n) {
    long f = 1;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

} // namespace

TEST_CASE("finite sergeev products follow the presentation") {
    CHECK(serg_word(2, "c1c1") == serg_one(2));
    CHECK(serg_word(2, "s1c1") == serg_word(2, "c2s1"));
    CHECK(serg_add(serg_word(2, "c1c2"), serg_word(2, "c2c1")).is_zero());
    CHECK(serg_word(3, "s1s2s1") == serg_word(3, "s2s1s2"));
    CHECK(serg_word(3, "s1s1") == serg_one(3));

    for (int r = 1; r <= 3; ++r) {
        std::vector<SergMono> basis = serg_basis(r);
        CHECK(static_cast<long>(basis.size()) == (1L << r) * factorial(r));
        std::mt19937_64 rng(911);
        std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            SergElement a{r, {{basis[pick(rng)], GRat(1)}}};
            SergElement b{r, {{basis[pick(rng)], GRat(2)}}};
            SergElement c{r, {{basis[pick(rng)], GRat(-1)}}};
            CHECK(serg_mul(serg_mul(a, b), c) == serg_mul(a, serg_mul(b, c)));
        }
    }
}

TEST_CASE("affine straightening reproduces the defining relations") {
    ASergElement lhs = aserg_word(2, "s1x1");
    ASergElement rhs = aserg_word(2, "x2s1");
    aserg_add_term(rhs, ASergMono{{0, 0}, {0, 0}, {0, 1}}, GRat(-1));
    ASergElement cc = aserg_word(2, "c1c2");
    rhs = aserg_add(rhs, aserg_scale(cc, GRat(-1)));
    CHECK(lhs == rhs);

    CHECK(aserg_add(aserg_word(2, "c1x1"), aserg_word(2, "x1c1")).is_zero());
    CHECK(aserg_add(aserg_word(2, "x1x2"), aserg_scale(aserg_word(2, "x2x1"), GRat(-1))).is_zero());

    SUBCASE("every product lands in normal form") {
        std::mt19937_64 rng(2718);
        for (int trial = 0; trial < 30; ++trial) {
            ASergElement a = random_element(rng, 3, 2, 2);
            ASergElement b = random_element(rng, 3, 2, 2);
            ASergElement ab = aserg_mul(a, b);
            for (const auto& [m, c] : ab.terms) {
                CHECK(m.a.size() == 3);
                CHECK(!c.is_zero());
            }
            ASergElement c = random_element(rng, 3, 1, 2);
            CHECK(aserg_mul(ab, c) == aserg_mul(a, aserg_mul(b, c)));
        }
    }

    SUBCASE("the finite algebra embeds multiplicatively") {
        std::mt19937_64 rng(31);
        std::vector<SergMono> basis = serg_basis(3);
        std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
        for (int trial = 0; trial < 25; ++trial) {
            SergElement a{3, {{basis[pick(rng)], GRat(1)}}};
            SergElement b{3, {{basis[pick(rng)], GRat(1)}}};
            CHECK(aserg_from_serg(serg_mul(a, b)) ==
                  aserg_mul(aserg_from_serg(a), aserg_from_serg(b)));
        }
    }

    SUBCASE("parity is additive across products") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 20; ++trial) {
            ASergMono m1 = random_mono(rng, 2, 2);
            ASergMono m2 = random_mono(rng, 2, 2);
            ASergElement prod = aserg_straighten(2, {m1, m2});
            for (const auto& [m, c] : prod.terms)
                CHECK(m.parity() == (m1.parity() + m2.parity()) % 2);
        }
    }
}

TEST_CASE("diagram images satisfy the presentations") {
    for (int r = 1; r <= 3; ++r) {
        for (const auto& chk : verify_presentation(sergeev_relations(r), phi_images(r))) {
            INFO("finite r=" << r << " " << chk.name);
            CHECK(chk.pass);
        }
        for (const auto& chk : verify_presentation(aserg_relations(r), nu_images(r))) {
            INFO("affine r=" << r << " " << chk.name);
            CHECK(chk.pass);
        }
    }

    CHECK(normalize(expr_compose(phi_image_c(1, 1), phi_image_c(1, 1))) ==
          nm_identity(Word(1, Dir::Up)));

    SUBCASE("a perturbed image fails with a nonzero residual") {
        std::map<std::string, Expr> bad = nu_images(2);
        bad["x1"] = bad["x1"] + expr_identity(Word(2, Dir::Up));
        int failures = 0;
        for (const auto& chk : verify_presentation(aserg_relations(2), bad)) {
            if (!chk.pass) {
                ++failures;
                CHECK(!chk.residual.is_zero());
            }
        }
        CHECK(failures > 0);
    }
}

TEST_CASE("walled images satisfy the frozen relation list") {
    for (int r = 0; r <= 2; ++r) {
        for (int s = 0; s <= 2; ++s) {
            if (r + s < 1 || r + s > 4)
                continue;
            WalledPresentation p = walled_presentation(r, s);
            for (const auto& chk : verify_presentation(p.relations, p.images)) {
                INFO("r=" << r << " s=" << s << " " << chk.name);
                CHECK(chk.pass);
            }
        }
    }

    WalledPresentation p = walled_presentation(1, 1);
    Expr e = p.images.at("e");
    CHECK(normalize(expr_compose(e, e)).is_zero());
}

TEST_CASE("endomorphism spaces have the algebra dimensions") {
    for (int r = 1; r <= 4; ++r) {
        Word obj(r, Dir::Up);
        long keys = static_cast<long>(enumerate_keys(obj, obj, 0, 0).size());
        CHECK(keys == (1L << r) * factorial(r));
    }
    for (int r = 0; r <= 4; ++r) {
        for (int s = 0; r + s <= 4; ++s) {
            if (r + s < 1)
                continue;
            Word obj(s, Dir::Down);
            obj.insert(obj.end(), r, Dir::Up);
            long keys = static_cast<long>(enumerate_keys(obj, obj, 0, 0).size());
            CHECK(keys == (1L << (r + s)) * factorial(r + s));
        }
    }
}

TEST_CASE("basis monomials map to independent diagrams") {
    for (int r = 1; r <= 3; ++r) {
        std::set<NormalKey> seen;
        for (const SergMono& m : serg_basis(r)) {
            NormalMorphism nm = normalize(phi_image(r, m));
            REQUIRE(nm.terms.size() == 1);
            CHECK(nm.terms.begin()->second == BubblePoly(GRat(1)));
            seen.insert(nm.terms.begin()->first);
        }
        CHECK(static_cast<long>(seen.size()) == (1L << r) * factorial(r));
    }

    SUBCASE("affine monomials with small exponents stay distinct") {
        int r = 2;
        std::set<NormalKey> top_keys;
        std::map<std::pair<NormalKey, BubbleMonomial>, long> column;
        std::vector<SparseVec> rows;
        std::vector<SergMono> finite = serg_basis(r);
        for (int a1 = 0; a1 <= 1; ++a1) {
            for (int a2 = 0; a2 <= 1; ++a2) {
                for (const SergMono& fm : finite) {
                    ASergMono m{{a1, a2}, fm.b, fm.w};
                    NormalMorphism nm = normalize(nu_image(r, m));
                    std::vector<NormalKey> top;
                    SparseVec row;
                    for (const auto& [key, poly] : nm.terms) {
                        CHECK(key.total_dots() <= 2);
                        if (key.total_dots() == m.xdegree())
                            top.push_back(key);
                        for (const auto& [mono, c] : poly.terms()) {
                            auto [it, fresh] = column.emplace(
                                std::make_pair(key, mono), static_cast<long>(column.size()));
                            row[it->second] = c;
                        }
                    }
                    REQUIRE(top.size() == 1);
                    top_keys.insert(top.front());
                    rows.push_back(std::move(row));
                }
            }
        }
        CHECK(rows.size() == 32);
        CHECK(static_cast<long>(top_keys.size()) == 32);
        CHECK(rank_of_rows(rows) == 32);
    }
}

TEST_CASE("straightening and normalization tell the same story") {
    std::mt19937_64 rng(20260814);
    int r = 2;
    for (int trial = 0; trial < 20; ++trial) {
        ASergMono m1 = random_mono(rng, r, 2);
        ASergMono m2 = random_mono(rng, r, 2);
        ASergElement prod = aserg_straighten(r, {m1, m2});
        Expr direct = expr_compose(nu_image(r, m1), nu_image(r, m2));
        Expr rebuilt = expr_zero(Word(r, Dir::Up), Word(r, Dir::Up));
        for (const auto& [m, c] : prod.terms)
            rebuilt = rebuilt + nu_image(r, m).scaled(c);
        CHECK(normalize(direct - rebuilt).is_zero());
    }
}

TEST_CASE("cyclotomic reduction cuts every exponent below the degree") {
    GRat m(7);
    CycloSerg quad{1, 2, {GRat(1), -m}};
    ASergElement x2 = aserg_word(1, "x1x1");
    ASergElement red = cyclo_reduce(x2, quad);
    CHECK(red == aserg_scale(aserg_one(1), m));

    CycloSerg lin{1, 1, {GRat(1)}};
    CHECK(cyclo_reduce(aserg_gen_x(1, 1), lin).is_zero());
    CHECK(static_cast<long>(cyclo_basis(lin).size()) == 2);

    CHECK(static_cast<long>(cyclo_basis(quad).size()) == 4);
    std::set<std::pair<int, int>> shapes;
    for (const ASergMono& b : cyclo_basis(quad))
        shapes.insert({b.a[0], b.b[0]});
    CHECK(shapes == std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    SUBCASE("reduction agrees with the key count") {
        for (auto [n, ell] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}}) {
            std::vector<GRat> z(ell / 2 + 1, GRat(0));
            z[0] = GRat(1);
            for (size_t k = 1; k < z.size(); ++k)
                z[k] = GRat(static_cast<long>(k) + 1);
            CycloSerg data{n, ell, z};
            long dim = 1;
            for (int k = 0; k < n; ++k)
                dim *= ell;
            dim *= (1L << n) * factorial(n);
            CHECK(static_cast<long>(cyclo_basis(data).size()) == dim);
            Word obj(n, Dir::Up);
            long keys = static_cast<long>(
                enumerate_keys(obj, obj, n * (ell - 1), ell - 1).size());
            CHECK(keys == dim);
        }
    }

    SUBCASE("reduction is a ring map on samples") {
        std::mt19937_64 rng(5150);
        CycloSerg data{2, 2, {GRat(1), GRat(-3)}};
        for (int trial = 0; trial < 15; ++trial) {
            ASergElement a = random_element(rng, 2, 3, 2);
            ASergElement b = random_element(rng, 2, 3, 2);
            ASergElement direct = cyclo_reduce(aserg_mul(a, b), data);
            ASergElement staged =
                cyclo_reduce(aserg_mul(cyclo_reduce(a, data), cyclo_reduce(b, data)), data);
            CHECK(direct == staged);
            for (const auto& [m, c] : direct.terms)
                for (int v : m.a)
                    CHECK(v < data.ell);
        }
    }
}

TEST_CASE("structure constant tables close associatively") {
    nlohmann::json fin = serg_structure_constants(2);
    CHECK(fin["dim"] == 8);
    CHECK(fin["basis"].size() == 8);
    CHECK(fin["table"].size() == 8);

    std::vector<SergMono> basis = serg_basis(2);
    std::map<SergMono, size_t> index;
    for (size_t k = 0; k < basis.size(); ++k)
        index.emplace(basis[k], k);
    SergMono c1{{1, 0}, {0, 1}};
    SergMono c2{{0, 1}, {0, 1}};
    SergMono c12{{1, 1}, {0, 1}};
    CHECK(fin["table"][index.at(c1)][index.at(c1)][index.at(SergMono{{0, 0}, {0, 1}})] == "1");
    CHECK(fin["table"][index.at(c2)][index.at(c1)][index.at(c12)] == "-1");

    nlohmann::json cyc = cyclo_structure_constants(CycloSerg{1, 2, {GRat(1), GRat(-7)}});
    CHECK(cyc["dim"] == 4);
    std::vector<ASergMono> cbasis = cyclo_basis(CycloSerg{1, 2, {GRat(1), GRat(-7)}});
    std::map<ASergMono, size_t> cindex;
    for (size_t k = 0; k < cbasis.size(); ++k)
        cindex.emplace(cbasis[k], k);
    ASergMono x{{1}, {0}, {0}};
    ASergMono one{{0}, {0}, {0}};
    CHECK(cyc["table"][cindex.at(x)][cindex.at(x)][cindex.at(one)] == "7");
}

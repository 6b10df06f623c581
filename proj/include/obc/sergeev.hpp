#pragma once

#include "obc/diagram.hpp"
#include "obc/normal.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <vector>

namespace obc {

/**
 * Basis monomial c^b w of the finite Sergeev superalgebra on r strands.
 * Clifford letters are kept in ascending index order, the permutation is
 * stored in zero based one line notation.
 */
struct SergMono {
    std::vector<int> b;
    std::vector<int> w;

    int parity() const;
};

bool operator==(const SergMono& x, const SergMono& y);
bool operator<(const SergMono& x, const SergMono& y);

/** Linear combination of Sergeev basis monomials. */
struct SergElement {
    int r = 0;
    std::map<SergMono, GRat> terms;

    bool is_zero() const { return terms.empty(); }
};

bool operator==(const SergElement& x, const SergElement& y);

SergElement serg_zero(int r);
SergElement serg_one(int r);
// transposition of letters i and i+1, one based
SergElement serg_gen_s(int r, int i);
SergElement serg_gen_c(int r, int i);
void serg_add_term(SergElement& e, const SergMono& m, const GRat& c);
SergElement serg_add(const SergElement& x, const SergElement& y);
SergElement serg_scale(const SergElement& x, const GRat& c);
SergElement serg_mul(const SergElement& x, const SergElement& y);
std::vector<SergMono> serg_basis(int r);

/**
 * Basis monomial x^a c^b w of the affine Sergeev superalgebra. Products are
 * straightened back into this order with the defining relations.
 */
struct ASergMono {
    std::vector<int> a;
    std::vector<int> b;
    std::vector<int> w;

    int parity() const;
    int xdegree() const;
};

bool operator==(const ASergMono& x, const ASergMono& y);
bool operator<(const ASergMono& x, const ASergMono& y);

/** Linear combination of affine Sergeev basis monomials. */
struct ASergElement {
    int r = 0;
    std::map<ASergMono, GRat> terms;

    bool is_zero() const { return terms.empty(); }
};

bool operator==(const ASergElement& x, const ASergElement& y);

ASergElement aserg_zero(int r);
ASergElement aserg_one(int r);
ASergElement aserg_gen_s(int r, int i);
ASergElement aserg_gen_c(int r, int i);
ASergElement aserg_gen_x(int r, int i);
void aserg_add_term(ASergElement& e, const ASergMono& m, const GRat& c);
ASergElement aserg_add(const ASergElement& x, const ASergElement& y);
ASergElement aserg_scale(const ASergElement& x, const GRat& c);
ASergElement aserg_mul(const ASergElement& x, const ASergElement& y);
// product of a list of monomials, folded through aserg_mul
ASergElement aserg_straighten(int r, const std::vector<ASergMono>& factors);
ASergElement aserg_from_serg(const SergElement& e);

/**
 * Cyclotomic quotient data: n strands and a monic polynomial
 * z[0] t^ell + z[1] t^(ell-2) + ... with only even gap terms, z[0] = 1.
 */
struct CycloSerg {
    int n = 0;
    int ell = 0;
    std::vector<GRat> z;
};

// rewrites every exponent below ell, funnelling high powers to the first
// letter where the defining polynomial applies
ASergElement cyclo_reduce(const ASergElement& e, const CycloSerg& data);
std::vector<ASergMono> cyclo_basis(const CycloSerg& data);

// generator images of the finite Sergeev algebra on r up strands; algebra
// indices count strands from the right edge of the picture
Expr phi_image_s(int r, int i);
Expr phi_image_c(int r, int i);
Expr phi_image(int r, const SergMono& m);

// generator images of the affine Sergeev algebra, black dots for x letters
Expr nu_image_s(int r, int i);
Expr nu_image_c(int r, int i);
Expr nu_image_x(int r, int i);
Expr nu_image(int r, const ASergMono& m);

// the cyclotomic quotient reads the same diagrams modulo the dot ideal
Expr gamma_image(int n, const ASergMono& m);

// generator images of the walled algebra on s down and r up strands;
// indices 1..r run over the up strands, r+1..r+s over the down strands
Expr alpha_image_s(int r, int s, int i);
Expr alpha_image_e(int r, int s);
Expr alpha_image_c(int r, int s, int i);

/** One side of a defining relation, a linear combination of generator words. */
struct RelTerm {
    GRat coeff;
    std::vector<std::string> word;
};

struct Relation {
    std::string name;
    std::vector<RelTerm> lhs;
    std::vector<RelTerm> rhs;
};

struct RelationCheck {
    std::string name;
    bool pass = false;
    NormalMorphism residual;
};

std::vector<Relation> sergeev_relations(int r);
std::vector<Relation> aserg_relations(int r);
std::map<std::string, Expr> phi_images(int r);
std::map<std::string, Expr> nu_images(int r);

/** Walled algebra generators with their diagram images and relation list. */
struct WalledPresentation {
    int r = 0;
    int s = 0;
    std::vector<std::string> gens;
    std::map<std::string, Expr> images;
    std::vector<Relation> relations;
};

WalledPresentation walled_presentation(int r, int s);

// evaluates both sides of every relation through the images and normalizes
// the difference; a relation passes when the residual vanishes
std::vector<RelationCheck> verify_presentation(const std::vector<Relation>& rels,
                                               const std::map<std::string, Expr>& images);

nlohmann::json serg_structure_constants(int r);
nlohmann::json cyclo_structure_constants(const CycloSerg& data);

} // namespace obc

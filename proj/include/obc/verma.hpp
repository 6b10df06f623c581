#pragma once

#include "obc/diagram.hpp"
#include "obc/qn.hpp"
#include "obc/sympoly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace obc {

// flat index of the strictly lower triangular pair (i, j), i > j, listed row-major
int lowering_index(int n, int i, int j);
std::pair<int, int> lowering_pair(int n, int t);

// total exponent of a tail monomial; every h_i counts once, unlike sym_degree
int tail_degree(const SymMonomial& m);

/** Basis symbol of the generic Verma supermodule: even and odd lowering
    exponents followed by Clifford bits on the Cartan generators.  The right
    polynomial tail in h_1..h_n is carried separately as the coefficient. */
struct VermaKey {
    std::vector<int> a;  // exponents of f_1..f_N, N = n(n-1)/2
    std::vector<int> b;  // bits for fbar_1..fbar_N
    std::vector<int> c;  // bits for hbar_1..hbar_n

    int lowering_total() const;
    int parity() const;
    bool operator==(const VermaKey& o) const;
    bool operator<(const VermaKey& o) const;
};

VermaKey verma_unit_key(int n);

/** Element of the Verma supermodule: basis symbols with polynomial tails.
    The grading of a term is the degree of its tail monomial. */
struct VermaVector {
    int n = 0;
    std::map<VermaKey, SymPoly> terms;
    bool truncated = false;  // a term beyond the truncation bounds was dropped

    bool is_zero() const { return terms.empty(); }
    bool operator==(const VermaVector& o) const { return n == o.n && terms == o.terms; }
};

/** Retention bounds: tails of degree > degree and lowering monomials of total
    exponent > lowering are dropped and the result is flagged as truncated.
    Every component within the bounds is exact. */
struct Truncation {
    int degree = 0;
    int lowering = 0;
};

VermaVector verma_unit(int n);
VermaVector verma_zero(int n);
void verma_add_term(VermaVector& v, const VermaKey& k, const SymPoly& p);
VermaVector verma_add(const VermaVector& x, const VermaVector& y);
VermaVector verma_scale(const VermaVector& v, const GRat& c);
int verma_grading(const VermaVector& v);
VermaVector top_component(const VermaVector& v);
std::string verma_dump(const VermaVector& v);

// graded commutator of two q(n) basis generators, re-expressed in that basis
std::vector<std::pair<QGen, GRat>> superbracket(int n, const QGen& g1, const QGen& g2);

// left action of a q(n) basis generator, straightened onto the basis
VermaVector verma_act(const QGen& g, const VermaVector& v, const Truncation& t);

void verma_cache_clear();

/** Element of V^(x)word (x) M: flat tensor index paired with a Verma symbol,
    leftmost tensor factor most significant. */
struct VMVector {
    int n = 0;
    Word word;
    std::map<std::pair<long, VermaKey>, SymPoly> terms;
    bool truncated = false;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const VMVector& o) const {
        return n == o.n && word == o.word && terms == o.terms;
    }
};

long vm_flat(const QnContext& ctx, const std::vector<int>& indices);
std::vector<int> vm_digits(const QnContext& ctx, size_t width, long flat);

// basis vector v_{indices} (x) unit, indices in 0..2n-1 for an all-up word
VMVector vm_unit(const QnContext& ctx, const std::vector<int>& indices);
VMVector vm_add(const VMVector& x, const VMVector& y);
VMVector vm_scale(const VMVector& v, const GRat& c);
int vm_grading(const VMVector& v);
VMVector top_component(const VMVector& v);

// evaluate a diagram expression on V^(x)src (x) M, dots coupling through the Casimir
VMVector psim_eval(const QnContext& ctx, const Expr& e, const VMVector& v, const Truncation& t);

} // namespace obc

#pragma once

#include "obc/diagram.hpp"
#include "obc/supermatrix.hpp"

#include <tuple>
#include <vector>

namespace obc {

/** The natural q(n) supermodule V of dimension (n|n) and its tensor words. */
struct QnContext {
    int n;
    explicit QnContext(int n_) : n(n_) {
        if (n_ < 1) throw std::invalid_argument("n must be positive");
    }
    int dim() const { return 2 * n; }
};

// parity vector of V: v_1..v_n even, then v_{1bar}..v_{nbar} odd
std::vector<int> space_parity(const QnContext& ctx);
std::vector<int> word_space_parity(const QnContext& ctx, const Word& w);

struct QGen {
    bool tilde = false;
    int i = 1;
    int j = 1;
    int eps = 0;

    bool operator==(const QGen& o) const {
        return tilde == o.tilde && i == o.i && j == o.j && eps == o.eps;
    }
    bool operator<(const QGen& o) const {
        return std::tie(tilde, i, j, eps) < std::tie(o.tilde, o.i, o.j, o.eps);
    }
};

SuperMatrix gen_matrix(const QnContext& ctx, const QGen& g);

// coproduct action on the tensor word, dual action on down factors
SuperMatrix module_matrix(const QnContext& ctx, const QGen& g, const Word& a);

// image of a dot-free expression on V^src -> V^dst
SuperMatrix phi_eval(const QnContext& ctx, const Expr& e);

// Casimir action on V (x) V^rest
SuperMatrix casimir_matrix(const QnContext& ctx, const Word& rest);

// image on V^src (x) V^module with black dots acting through the Casimir
SuperMatrix psi_eval(const QnContext& ctx, const Expr& e, const Word& module);

// matrix of a single layer on its tensor word; black dots couple to l.right only
SuperMatrix layer_matrix(const QnContext& ctx, const Layer& l);

// eps listed as (eps_1, ..., eps_k)
int sgn(const std::vector<int>& eps);
int sgn_recursive(const std::vector<int>& eps);

SuperMatrix central_element_matrix(const QnContext& ctx, int k, const Word& module);

// dimension of the supercommutant of the q(n)-action on V^a
long commutant_dim(const QnContext& ctx, const Word& a);

} // namespace obc

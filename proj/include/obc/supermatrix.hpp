#pragma once

#include "obc/grat.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <vector>

namespace obc {

/** Exact sparse matrix between parity-tagged superspaces. */
struct SuperMatrix {
    std::vector<int> row_par;
    std::vector<int> col_par;
    // row -> col -> value, zero values never stored
    std::map<int, std::map<int, GRat>> rows;

    static SuperMatrix zero(std::vector<int> rp, std::vector<int> cp);
    static SuperMatrix identity(std::vector<int> par);

    int nrows() const { return static_cast<int>(row_par.size()); }
    int ncols() const { return static_cast<int>(col_par.size()); }

    void add(int r, int c, const GRat& v);
    GRat get(int r, int c) const;
    bool is_zero() const { return rows.empty(); }

    SuperMatrix operator+(const SuperMatrix& o) const;
    SuperMatrix operator-(const SuperMatrix& o) const;
    SuperMatrix operator*(const SuperMatrix& o) const;
    SuperMatrix scaled(const GRat& c) const;
    bool operator==(const SuperMatrix& o) const;
    bool operator!=(const SuperMatrix& o) const { return !(*this == o); }

    // entry parity is row_par[r] + col_par[c]; first = even part
    std::pair<SuperMatrix, SuperMatrix> parity_split() const;

    SuperMatrix inverse() const;
};

// Koszul signs live here and nowhere else: (A (x) B)(v (x) w) picks up
// (-1)^{p(B) p(v)}, applied per homogeneous part of B
SuperMatrix kron(const SuperMatrix& a, const SuperMatrix& b);

using SparseVec = std::map<long, GRat>;

// destructive exact Gaussian elimination
long rank_of_rows(std::vector<SparseVec> rows);

SparseVec matrix_flatten(const SuperMatrix& m);

std::string matrix_to_coord_text(const SuperMatrix& m);
nlohmann::json matrix_to_json(const SuperMatrix& m);

} // namespace obc

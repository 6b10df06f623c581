#include "obc/supermatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace obc {

SuperMatrix SuperMatrix::zero(std::vector<int> rp, std::vector<int> cp) {
    SuperMatrix m;
    m.row_par = std::move(rp);
    m.col_par = std::move(cp);
    return m;
}

SuperMatrix SuperMatrix::identity(std::vector<int> par) {
    SuperMatrix m;
    m.row_par = par;
    m.col_par = std::move(par);
    for (int i = 0; i < m.nrows(); ++i) m.rows[i][i] = GRat(1);
    return m;
}

void SuperMatrix::add(int r, int c, const GRat& v) {
    if (v.is_zero()) return;
    auto& row = rows[r];
    auto it = row.find(c);
    if (it == row.end()) {
        row[c] = v;
        return;
    }
    it->second += v;
    if (it->second.is_zero()) {
        row.erase(it);
        if (row.empty()) rows.erase(r);
    }
}

GRat SuperMatrix::get(int r, int c) const {
    auto rit = rows.find(r);
    if (rit == rows.end()) return GRat(0);
    auto cit = rit->second.find(c);
    return cit == rit->second.end() ? GRat(0) : cit->second;
}

SuperMatrix SuperMatrix::operator+(const SuperMatrix& o) const {
    if (row_par != o.row_par || col_par != o.col_par)
        throw std::invalid_argument("matrix shape mismatch in sum");
    SuperMatrix m = *this;
    for (const auto& [r, row] : o.rows) {
        for (const auto& [c, v] : row) m.add(r, c, v);
    }
    return m;
}

SuperMatrix SuperMatrix::operator-(const SuperMatrix& o) const {
    return *this + o.scaled(GRat(-1));
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
    if (col_par != o.row_par) throw std::invalid_argument("matrix shape mismatch in product");
    SuperMatrix m = zero(row_par, o.col_par);
    for (const auto& [r, row] : rows) {
        auto& out = m.rows[r];
        for (const auto& [k, v] : row) {
            auto kit = o.rows.find(k);
            if (kit == o.rows.end()) continue;
            for (const auto& [c, w] : kit->second) {
                auto it = out.find(c);
                if (it == out.end()) {
                    GRat prod = v * w;
                    if (!prod.is_zero()) out[c] = prod;
                } else {
                    it->second += v * w;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
        if (out.empty()) m.rows.erase(r);
    }
    return m;
}

SuperMatrix SuperMatrix::scaled(const GRat& c) const {
    SuperMatrix m = zero(row_par, col_par);
    if (c.is_zero()) return m;
    for (const auto& [r, row] : rows) {
        for (const auto& [cc, v] : row) m.rows[r][cc] = v * c;
    }
    return m;
}

bool SuperMatrix::operator==(const SuperMatrix& o) const {
    return row_par == o.row_par && col_par == o.col_par && rows == o.rows;
}

std::pair<SuperMatrix, SuperMatrix> SuperMatrix::parity_split() const {
    SuperMatrix even = zero(row_par, col_par);
    SuperMatrix odd = zero(row_par, col_par);
    for (const auto& [r, row] : rows) {
        for (const auto& [c, v] : row) {
            ((row_par[r] ^ col_par[c]) ? odd : even).rows[r][c] = v;
        }
    }
    return {even, odd};
}

SuperMatrix SuperMatrix::inverse() const {
    int n = nrows();
    if (n != ncols()) throw std::invalid_argument("inverse of non-square matrix");
    // augmented [A | I], reduce A to I
    std::vector<std::map<int, GRat>> a(n), inv(n);
    for (const auto& [r, row] : rows) a[r] = row;
    for (int i = 0; i < n; ++i) inv[i][i] = GRat(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (a[r].count(col)) {
                piv = r;
                break;
            }
        }
        if (piv < 0) throw std::invalid_argument("matrix is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        GRat d = a[col][col].inv();
        for (auto& [c, v] : a[col]) v = v * d;
        for (auto& [c, v] : inv[col]) v = v * d;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            auto it = a[r].find(col);
            if (it == a[r].end()) continue;
            GRat f = it->second;
            for (const auto& [c, v] : a[col]) {
                auto jt = a[r].find(c);
                GRat nv = (jt == a[r].end() ? GRat(0) : jt->second) - f * v;
                if (nv.is_zero()) {
                    if (jt != a[r].end()) a[r].erase(jt);
                } else {
                    a[r][c] = nv;
                }
            }
            for (const auto& [c, v] : inv[col]) {
                auto jt = inv[r].find(c);
                GRat nv = (jt == inv[r].end() ? GRat(0) : jt->second) - f * v;
                if (nv.is_zero()) {
                    if (jt != inv[r].end()) inv[r].erase(jt);
                } else {
                    inv[r][c] = nv;
                }
            }
        }
    }
    SuperMatrix m = zero(col_par, row_par);
    for (int r = 0; r < n; ++r) {
        if (!inv[r].empty()) m.rows[r] = std::move(inv[r]);
    }
    return m;
}

SuperMatrix kron(const SuperMatrix& a, const SuperMatrix& b) {
    SuperMatrix m;
    int nbr = b.nrows();
    int nbc = b.ncols();
    m.row_par.reserve(a.nrows() * nbr);
    for (int ra = 0; ra < a.nrows(); ++ra) {
        for (int rb = 0; rb < nbr; ++rb) m.row_par.push_back(a.row_par[ra] ^ b.row_par[rb]);
    }
    m.col_par.reserve(a.ncols() * nbc);
    for (int ca = 0; ca < a.ncols(); ++ca) {
        for (int cb = 0; cb < nbc; ++cb) m.col_par.push_back(a.col_par[ca] ^ b.col_par[cb]);
    }
    for (const auto& [ra, arow] : a.rows) {
        for (const auto& [ca, av] : arow) {
            for (const auto& [rb, brow] : b.rows) {
                auto& out = m.rows[ra * nbr + rb];
                for (const auto& [cb, bv] : brow) {
                    int pb = b.row_par[rb] ^ b.col_par[cb];
                    GRat v = av * bv;
                    if (pb && a.col_par[ca]) v = -v;
                    auto key = ca * nbc + cb;
                    auto it = out.find(key);
                    if (it == out.end()) {
                        out[key] = v;
                    } else {
                        it->second += v;
                        if (it->second.is_zero()) out.erase(it);
                    }
                }
            }
        }
    }
    for (auto it = m.rows.begin(); it != m.rows.end();) {
        it = it->second.empty() ? m.rows.erase(it) : std::next(it);
    }
    return m;
}

long rank_of_rows(std::vector<SparseVec> rows) {
    // pivot column -> reduced row with leading 1 at that column
    std::map<long, SparseVec> pivots;
    long rank = 0;
    for (auto& row : rows) {
        while (!row.empty()) {
            long lead = row.begin()->first;
            auto pit = pivots.find(lead);
            if (pit == pivots.end()) break;
            GRat f = row.begin()->second;
            for (const auto& [c, v] : pit->second) {
                auto it = row.find(c);
                GRat nv = (it == row.end() ? GRat(0) : it->second) - f * v;
                if (nv.is_zero()) {
                    if (it != row.end()) row.erase(it);
                } else {
                    row[c] = nv;
                }
            }
        }
        if (row.empty()) continue;
        GRat d = row.begin()->second.inv();
        for (auto& [c, v] : row) v = v * d;
        pivots[row.begin()->first] = std::move(row);
        ++rank;
    }
    return rank;
}

SparseVec matrix_flatten(const SuperMatrix& m) {
    SparseVec v;
    for (const auto& [r, row] : m.rows) {
        for (const auto& [c, val] : row) v[static_cast<long>(r) * m.ncols() + c] = val;
    }
    return v;
}

std::string matrix_to_coord_text(const SuperMatrix& m) {
    std::ostringstream os;
    os << m.nrows() << " " << m.ncols() << "\n";
    for (const auto& [r, row] : m.rows) {
        for (const auto& [c, v] : row) {
            os << r << " " << c << " " << grat_to_string(GRat(v.re)) << " "
               << grat_to_string(GRat(v.im)) << "\n";
        }
    }
    return os.str();
}

nlohmann::json matrix_to_json(const SuperMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [r, row] : m.rows) {
        for (const auto& [c, v] : row) {
            entries.push_back({{"row", r}, {"col", c}, {"value", grat_to_string(v)}});
        }
    }
    return {{"row_parity", m.row_par}, {"col_parity", m.col_par}, {"entries", entries}};
}

} // namespace obc

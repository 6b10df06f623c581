#pragma once

#include "obc/grat.hpp"

#include <map>
#include <string>
#include <vector>

namespace obc {

// exponents of h1, h2, ... with trailing zeros trimmed; {} is the constant 1
using SymMonomial = std::vector<int>;

int sym_degree(const SymMonomial& m);

struct SymMonoLess {
    bool operator()(const SymMonomial& a, const SymMonomial& b) const;
};

/** Polynomial in the complete homogeneous generators h1, h2, ... */
class SymPoly {
public:
    SymPoly() = default;
    explicit SymPoly(const GRat& c);
    static SymPoly generator(int k);

    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator-(const SymPoly& o) const;
    SymPoly operator-() const;
    SymPoly operator*(const SymPoly& o) const;
    SymPoly scaled(const GRat& c) const;
    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const SymPoly& o) const { return !(*this == o); }

    const std::map<SymMonomial, GRat, SymMonoLess>& terms() const { return terms_; }
    void add_term(const SymMonomial& m, const GRat& c);

private:
    std::map<SymMonomial, GRat, SymMonoLess> terms_;
};

SymPoly sym_mul(const SymPoly& p, const SymPoly& q);

// elementary symmetric e_r rewritten in the h generators
SymPoly e_from_h(int r);

// power sum x1^k + ... + xn^k in the h generators of n variables
SymPoly powersum_eval(int k, int n);

std::string sym_to_string(const SymPoly& p);
SymPoly sym_parse(const std::string& s);

} // namespace obc

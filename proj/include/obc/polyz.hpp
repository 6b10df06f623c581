#pragma once

#include "obc/grat.hpp"

#include <map>
#include <string>
#include <vector>

namespace obc {

// exponents of the formal coefficients z'1, z'2, ... with trailing zeros
// trimmed; {} is the constant 1
using ZMonomial = std::vector<int>;

int zmono_degree(const ZMonomial& m);

struct ZMonoLess {
    bool operator()(const ZMonomial& a, const ZMonomial& b) const;
};

/** Polynomial over the Gaussian rationals in the formal coefficients. */
class PolyZ {
public:
    PolyZ() = default;
    explicit PolyZ(const GRat& c);
    static PolyZ generator(int k);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GRat constant_term() const;
    int degree() const;

    PolyZ operator+(const PolyZ& o) const;
    PolyZ operator-(const PolyZ& o) const;
    PolyZ operator-() const;
    PolyZ operator*(const PolyZ& o) const;
    PolyZ scaled(const GRat& c) const;
    PolyZ& operator+=(const PolyZ& o);
    bool operator==(const PolyZ& o) const { return terms_ == o.terms_; }
    bool operator!=(const PolyZ& o) const { return !(*this == o); }

    const std::map<ZMonomial, GRat, ZMonoLess>& terms() const { return terms_; }
    void add_term(const ZMonomial& m, const GRat& c);

private:
    std::map<ZMonomial, GRat, ZMonoLess> terms_;
};

// substitute numeric values for the formal coefficients, values[k-1] for z'k
GRat polyz_eval(const PolyZ& p, const std::vector<GRat>& values);

std::string polyz_to_string(const PolyZ& p);

} // namespace obc

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace obc {

using Rat = boost::multiprecision::mpq_rational;

/** Gaussian rational a + b*i with exact rational parts. */
struct GRat {
    Rat re;
    Rat im;

    GRat() : re(0), im(0) {}
    GRat(long v) : re(v), im(0) {}
    GRat(const Rat& r) : re(r), im(0) {}
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_integer() const;
    bool operator==(const GRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GRat& o) const { return !(*this == o); }

    GRat operator+(const GRat& o) const { return {re + o.re, im + o.im}; }
    GRat operator-(const GRat& o) const { return {re - o.re, im - o.im}; }
    GRat operator-() const { return {-re, -im}; }
    GRat operator*(const GRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GRat inv() const;
    GRat operator/(const GRat& o) const { return *this * o.inv(); }
    GRat& operator+=(const GRat& o) { re += o.re; im += o.im; return *this; }
    GRat& operator-=(const GRat& o) { re -= o.re; im -= o.im; return *this; }
    GRat& operator*=(const GRat& o) { *this = *this * o; return *this; }
};

// square root of -1
inline GRat grat_i() { return GRat(Rat(0), Rat(1)); }

std::string grat_to_string(const GRat& v);
GRat grat_parse(const std::string& s);

} // namespace obc

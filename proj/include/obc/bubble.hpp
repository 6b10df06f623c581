#pragma once

#include "obc/grat.hpp"

#include <map>
#include <string>
#include <vector>

namespace obc {

// multiset of odd positive bubble indices, sorted ascending; {} is the constant 1
using BubbleMonomial = std::vector<int>;

int bubble_degree(const BubbleMonomial& m);

// graded-lex: total degree first, then lexicographic on the sorted index list
struct BubbleMonoLess {
    bool operator()(const BubbleMonomial& a, const BubbleMonomial& b) const;
};

/** Polynomial in the counterclockwise bubble generators D1, D3, D5, ... */
class BubblePoly {
public:
    BubblePoly() = default;
    explicit BubblePoly(const GRat& c);
    static BubblePoly generator(int k);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GRat constant_term() const;
    int degree() const;

    BubblePoly operator+(const BubblePoly& o) const;
    BubblePoly operator-(const BubblePoly& o) const;
    BubblePoly operator-() const;
    BubblePoly operator*(const BubblePoly& o) const;
    BubblePoly scaled(const GRat& c) const;
    BubblePoly& operator+=(const BubblePoly& o);
    bool operator==(const BubblePoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const BubblePoly& o) const { return !(*this == o); }

    const std::map<BubbleMonomial, GRat, BubbleMonoLess>& terms() const { return terms_; }
    void add_term(const BubbleMonomial& m, const GRat& c);

private:
    std::map<BubbleMonomial, GRat, BubbleMonoLess> terms_;
};

BubblePoly bubble_mul(const BubblePoly& p, const BubblePoly& q);

// clockwise bubble with k black dots, expanded in the counterclockwise generators
BubblePoly delta_prime(int k);

std::string bubble_to_string(const BubblePoly& p);
BubblePoly bubble_parse(const std::string& s);

} // namespace obc

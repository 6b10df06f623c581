#include "obc/grat.hpp"

#include <stdexcept>

namespace obc {

using boost::multiprecision::mpz_int;

bool GRat::is_integer() const {
    return im == 0 && denominator(re) == 1;
}

GRat GRat::inv() const {
    if (is_zero()) {
        throw std::invalid_argument("division by zero scalar");
    }
    Rat n = re * re + im * im;
    return {re / n, -im / n};
}

namespace {

Rat rat_parse(const std::string& s) {
    if (s.empty()) {
        throw std::invalid_argument("empty rational in scalar: '" + s + "'");
    }
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(mpz_int(s));
        }
        mpz_int num(s.substr(0, slash));
        mpz_int den(s.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator");
        }
        return Rat(num) / Rat(den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

std::string rat_to_string(const Rat& r) {
    return r.str();
}

// parses one additive component, e.g. "3/2", "-1", "2i", "2*i", "-i"
void parse_component(const std::string& piece, GRat& out) {
    if (piece.empty()) {
        throw std::invalid_argument("empty component in scalar literal");
    }
    if (piece.back() == 'i') {
        std::string coeff = piece.substr(0, piece.size() - 1);
        if (!coeff.empty() && coeff.back() == '*') {
            coeff.pop_back();
        }
        if (coeff.empty() || coeff == "+") {
            out.im += 1;
        } else if (coeff == "-") {
            out.im -= 1;
        } else {
            out.im += rat_parse(coeff);
        }
    } else {
        out.re += rat_parse(piece);
    }
}

} // namespace

std::string grat_to_string(const GRat& v) {
    if (v.im == 0) {
        return rat_to_string(v.re);
    }
    std::string imag;
    if (v.im == 1) {
        imag = "i";
    } else if (v.im == -1) {
        imag = "-i";
    } else {
        imag = rat_to_string(v.im) + "*i";
    }
    if (v.re == 0) {
        return imag;
    }
    if (imag[0] == '-') {
        return rat_to_string(v.re) + imag;
    }
    return rat_to_string(v.re) + "+" + imag;
}

GRat grat_parse(const std::string& s) {
    std::string t;
    for (char ch : s) {
        if (!isspace(static_cast<unsigned char>(ch))) {
            t.push_back(ch);
        }
    }
    if (t.empty()) {
        throw std::invalid_argument("empty scalar literal");
    }
    // split at the top-level '+' or '-' separating the two components
    size_t split = std::string::npos;
    for (size_t k = 1; k < t.size(); ++k) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/' && t[k - 1] != '*') {
            split = k;
            break;
        }
    }
    GRat out;
    if (split == std::string::npos) {
        parse_component(t, out);
    } else {
        parse_component(t.substr(0, split), out);
        std::string rest = t.substr(split);
        if (rest.size() >= 1 && rest[0] == '+') {
            rest = rest.substr(1);
        }
        parse_component(rest, out);
    }
    return out;
}

} // namespace obc

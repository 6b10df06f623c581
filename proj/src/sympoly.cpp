#include "obc/sympoly.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace obc {

int sym_degree(const SymMonomial& m) {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += static_cast<int>(i + 1) * m[i];
    return d;
}

bool SymMonoLess::operator()(const SymMonomial& a, const SymMonomial& b) const {
    int da = sym_degree(a);
    int db = sym_degree(b);
    if (da != db) return da < db;
    return a < b;
}

SymPoly::SymPoly(const GRat& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

SymPoly SymPoly::generator(int k) {
    if (k < 1) throw std::invalid_argument("generator index must be positive");
    SymPoly p;
    SymMonomial m(k, 0);
    m[k - 1] = 1;
    p.terms_[m] = GRat(1);
    return p;
}

int SymPoly::degree() const {
    if (terms_.empty()) return 0;
    return sym_degree(terms_.rbegin()->first);
}

void SymPoly::add_term(const SymMonomial& m, const GRat& c) {
    SymMonomial key = m;
    while (!key.empty() && key.back() == 0) key.pop_back();
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_[key] = c;
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

SymPoly SymPoly::operator-() const {
    SymPoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
    SymPoly r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            SymMonomial m(std::max(ma.size(), mb.size()), 0);
            for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
            for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

SymPoly SymPoly::scaled(const GRat& c) const {
    SymPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, co] : terms_) r.terms_[m] = co * c;
    return r;
}

SymPoly sym_mul(const SymPoly& p, const SymPoly& q) {
    return p * q;
}

SymPoly e_from_h(int r) {
    if (r < 0) throw std::invalid_argument("e_from_h requires a non-negative index");
    static std::map<int, SymPoly> cache;
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    SymPoly e;
    if (r == 0) {
        e = SymPoly(GRat(1));
    } else {
        for (int i = 1; i <= r; ++i) {
            SymPoly t = SymPoly::generator(i) * e_from_h(r - i);
            e = (i % 2 == 1) ? e + t : e - t;
        }
    }
    cache[r] = e;
    return e;
}

namespace {

// h_m rewritten so only h1..hn appear, using e_s = 0 for s > n
SymPoly h_truncated(int m, int n) {
    if (m == 0) return SymPoly(GRat(1));
    if (m <= n) return SymPoly::generator(m);
    static std::map<std::pair<int, int>, SymPoly> cache;
    auto key = std::make_pair(m, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SymPoly h;
    for (int s = 1; s <= n && s <= m; ++s) {
        SymPoly t = e_from_h(s) * h_truncated(m - s, n);
        h = (s % 2 == 1) ? h + t : h - t;
    }
    cache[key] = h;
    return h;
}

} // namespace

SymPoly powersum_eval(int k, int n) {
    if (k < 1 || n < 1) throw std::invalid_argument("powersum_eval requires k >= 1 and n >= 1");
    std::vector<SymPoly> p(k + 1);
    for (int j = 1; j <= k; ++j) {
        p[j] = h_truncated(j, n).scaled(GRat(j));
        for (int i = 1; i < j; ++i) p[j] = p[j] - h_truncated(j - i, n) * p[i];
    }
    return p[k];
}

namespace {

std::string mono_str(const SymMonomial& m) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "h" << (i + 1);
        if (m[i] > 1) os << "^" << m[i];
    }
    return os.str();
}

std::pair<std::string, bool> term_str(const SymMonomial& m, const GRat& c) {
    if (c.im != 0) {
        std::string s = "(" + grat_to_string(c) + ")";
        if (!m.empty()) s += "*" + mono_str(m);
        return {s, false};
    }
    bool neg = c.re < 0;
    GRat a = neg ? -c : c;
    if (m.empty()) return {grat_to_string(a), neg};
    if (a.re == 1) return {mono_str(m), neg};
    return {grat_to_string(a) + "*" + mono_str(m), neg};
}

} // namespace

std::string sym_to_string(const SymPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        auto [s, neg] = term_str(it->first, it->second);
        if (out.empty()) {
            out = (neg ? "-" : "") + s;
        } else {
            out += (neg ? " - " : " + ") + s;
        }
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
};

long parse_int(Cursor& c) {
    c.skip();
    size_t start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == start) throw std::invalid_argument("expected integer in polynomial: " + c.s);
    return std::stol(c.s.substr(start, c.i - start));
}

} // namespace

SymPoly sym_parse(const std::string& s) {
    Cursor c{s};
    SymPoly out;
    bool first = true;
    while (!c.done()) {
        GRat sign(1);
        char h = c.peek();
        if (h == '+') {
            ++c.i;
        } else if (h == '-') {
            sign = GRat(-1);
            ++c.i;
        } else if (!first) {
            throw std::invalid_argument("expected + or - between terms: " + s);
        }
        first = false;
        GRat coeff = sign;
        SymMonomial mono;
        bool more = true;
        while (more) {
            char f = c.peek();
            if (f == 'h') {
                ++c.i;
                int idx = static_cast<int>(parse_int(c));
                int exp = 1;
                if (c.peek() == '^') {
                    ++c.i;
                    exp = static_cast<int>(parse_int(c));
                }
                if (idx < 1 || exp < 1) throw std::invalid_argument("bad factor in: " + s);
                if (mono.size() < static_cast<size_t>(idx)) mono.resize(idx, 0);
                mono[idx - 1] += exp;
            } else if (f == '(') {
                size_t depth = 0;
                size_t start = c.i;
                while (c.i < c.s.size()) {
                    if (c.s[c.i] == '(') ++depth;
                    if (c.s[c.i] == ')' && --depth == 0) break;
                    ++c.i;
                }
                if (c.i >= c.s.size()) throw std::invalid_argument("unbalanced parens: " + s);
                coeff = coeff * grat_parse(c.s.substr(start + 1, c.i - start - 1));
                ++c.i;
            } else if (std::isdigit(static_cast<unsigned char>(f))) {
                size_t start = c.i;
                while (c.i < c.s.size() &&
                       (std::isdigit(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '/'))
                    ++c.i;
                coeff = coeff * grat_parse(c.s.substr(start, c.i - start));
            } else if (f == 'i') {
                ++c.i;
                coeff = coeff * grat_i();
            } else {
                throw std::invalid_argument("unexpected character in polynomial: " + s);
            }
            if (c.peek() == '*') {
                ++c.i;
            } else {
                more = false;
            }
        }
        out.add_term(mono, coeff);
    }
    if (first) throw std::invalid_argument("empty polynomial string");
    return out;
}

} // namespace obc

#include "obc/bubble.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace obc {

int bubble_degree(const BubbleMonomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

bool BubbleMonoLess::operator()(const BubbleMonomial& a, const BubbleMonomial& b) const {
    int da = bubble_degree(a);
    int db = bubble_degree(b);
    if (da != db) return da < db;
    return a < b;
}

BubblePoly::BubblePoly(const GRat& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

BubblePoly BubblePoly::generator(int k) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("bubble index must be odd and positive");
    BubblePoly p;
    p.terms_[{k}] = GRat(1);
    return p;
}

bool BubblePoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GRat BubblePoly::constant_term() const {
    auto it = terms_.find({});
    return it == terms_.end() ? GRat(0) : it->second;
}

int BubblePoly::degree() const {
    if (terms_.empty()) return 0;
    return bubble_degree(terms_.rbegin()->first);
}

void BubblePoly::add_term(const BubbleMonomial& m, const GRat& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_[m] = c;
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

BubblePoly BubblePoly::operator+(const BubblePoly& o) const {
    BubblePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

BubblePoly& BubblePoly::operator+=(const BubblePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

BubblePoly BubblePoly::operator-(const BubblePoly& o) const {
    BubblePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

BubblePoly BubblePoly::operator-() const {
    BubblePoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

BubblePoly BubblePoly::operator*(const BubblePoly& o) const {
    BubblePoly r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            BubbleMonomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            std::sort(m.begin(), m.end());
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

BubblePoly BubblePoly::scaled(const GRat& c) const {
    BubblePoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, co] : terms_) r.terms_[m] = co * c;
    return r;
}

BubblePoly bubble_mul(const BubblePoly& p, const BubblePoly& q) {
    return p * q;
}

BubblePoly delta_prime(int k) {
    if (k < 0) throw std::invalid_argument("delta_prime requires a non-negative index");
    if (k % 2 == 0) return BubblePoly();
    static std::unordered_map<int, BubblePoly> cache;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    BubblePoly r = BubblePoly::generator(k);
    for (int i = 1; 2 * i - 1 < k; ++i) {
        r = r - BubblePoly::generator(2 * i - 1) * delta_prime(k - 2 * i);
    }
    cache[k] = r;
    return r;
}

namespace {

std::string mono_str(const BubbleMonomial& m) {
    std::ostringstream os;
    for (size_t i = 0; i < m.size();) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        if (i > 0) os << "*";
        os << "D" << m[i];
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    return os.str();
}

// one printed term plus whether a leading minus was factored out
std::pair<std::string, bool> term_str(const BubbleMonomial& m, const GRat& c) {
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

std::string bubble_to_string(const BubblePoly& p) {
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

BubblePoly bubble_parse(const std::string& s) {
    Cursor c{s};
    BubblePoly out;
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
        BubbleMonomial mono;
        bool more = true;
        while (more) {
            char f = c.peek();
            if (f == 'D') {
                ++c.i;
                int idx = static_cast<int>(parse_int(c));
                int exp = 1;
                if (c.peek() == '^') {
                    ++c.i;
                    exp = static_cast<int>(parse_int(c));
                }
                if (idx < 1 || idx % 2 == 0 || exp < 1)
                    throw std::invalid_argument("bad bubble factor in: " + s);
                for (int e = 0; e < exp; ++e) mono.push_back(idx);
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
        std::sort(mono.begin(), mono.end());
        out.add_term(mono, coeff);
    }
    if (first) throw std::invalid_argument("empty polynomial string");
    return out;
}

} // namespace obc

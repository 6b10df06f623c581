#include "obc/polyz.hpp"

#include <sstream>
#include <stdexcept>

namespace obc {

int zmono_degree(const ZMonomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

bool ZMonoLess::operator()(const ZMonomial& a, const ZMonomial& b) const {
    int da = zmono_degree(a);
    int db = zmono_degree(b);
    if (da != db) return da < db;
    return a < b;
}

PolyZ::PolyZ(const GRat& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

PolyZ PolyZ::generator(int k) {
    if (k < 1) throw std::invalid_argument("generator index must be positive");
    PolyZ p;
    ZMonomial m(k, 0);
    m[k - 1] = 1;
    p.terms_[m] = GRat(1);
    return p;
}

bool PolyZ::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GRat PolyZ::constant_term() const {
    auto it = terms_.find({});
    return it == terms_.end() ? GRat(0) : it->second;
}

int PolyZ::degree() const {
    if (terms_.empty()) return 0;
    return zmono_degree(terms_.rbegin()->first);
}

void PolyZ::add_term(const ZMonomial& m, const GRat& c) {
    ZMonomial key = m;
    while (!key.empty() && key.back() == 0) key.pop_back();
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_[key] = c;
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

PolyZ PolyZ::operator+(const PolyZ& o) const {
    PolyZ r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

PolyZ PolyZ::operator-(const PolyZ& o) const {
    PolyZ r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

PolyZ PolyZ::operator-() const {
    PolyZ r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

PolyZ PolyZ::operator*(const PolyZ& o) const {
    PolyZ r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            ZMonomial m(std::max(ma.size(), mb.size()), 0);
            for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
            for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

PolyZ PolyZ::scaled(const GRat& c) const {
    PolyZ r;
    if (c.is_zero()) return r;
    for (const auto& [m, co] : terms_) r.terms_[m] = co * c;
    return r;
}

PolyZ& PolyZ::operator+=(const PolyZ& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GRat polyz_eval(const PolyZ& p, const std::vector<GRat>& values) {
    GRat out(0);
    for (const auto& [m, c] : p.terms()) {
        GRat v = c;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= values.size())
                throw std::invalid_argument("polyz_eval is missing a value for a used variable");
            for (int e = 0; e < m[i]; ++e) v = v * values[i];
        }
        out += v;
    }
    return out;
}

namespace {

std::string zmono_str(const ZMonomial& m) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "z'" << (i + 1);
        if (m[i] > 1) os << "^" << m[i];
    }
    return os.str();
}

std::pair<std::string, bool> zterm_str(const ZMonomial& m, const GRat& c) {
    if (c.im != 0) {
        std::string s = "(" + grat_to_string(c) + ")";
        if (!m.empty()) s += "*" + zmono_str(m);
        return {s, false};
    }
    bool neg = c.re < 0;
    GRat a = neg ? -c : c;
    if (m.empty()) return {grat_to_string(a), neg};
    if (a.re == 1) return {zmono_str(m), neg};
    return {grat_to_string(a) + "*" + zmono_str(m), neg};
}

} // namespace

std::string polyz_to_string(const PolyZ& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        auto [s, neg] = zterm_str(it->first, it->second);
        if (out.empty()) {
            out = (neg ? "-" : "") + s;
        } else {
            out += (neg ? " - " : " + ") + s;
        }
    }
    return out;
}

} // namespace obc

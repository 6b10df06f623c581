#include "obc/sergeev.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace obc {

namespace {

std::vector<int> identity_perm(int r) {
    std::vector<int> v(r);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<int> perm_compose(const std::vector<int>& w, const std::vector<int>& u) {
    std::vector<int> out(w.size());
    for (size_t k = 0; k < w.size(); ++k)
        out[k] = w[u[k]];
    return out;
}

// product order list of adjacent transpositions, one based indices
std::vector<int> reduced_word(std::vector<int> v) {
    std::vector<int> swaps;
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t k = 0; k + 1 < v.size(); ++k) {
            if (v[k] > v[k + 1]) {
                std::swap(v[k], v[k + 1]);
                swaps.push_back(static_cast<int>(k) + 1);
                moved = true;
            }
        }
    }
    std::reverse(swaps.begin(), swaps.end());
    return swaps;
}

void check_index(int i, int lo, int hi, const char* what) {
    if (i < lo || i > hi)
        throw std::invalid_argument(std::string(what) + " index is out of range");
}

int bits_set(const std::vector<int>& b) {
    int n = 0;
    for (int v : b)
        n += v;
    return n;
}

// sign collected when the letters of d merge into the ordered word c^b
int clifford_merge_sign(const std::vector<int>& b, const std::vector<int>& d) {
    int flips = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        if (!d[i])
            continue;
        for (size_t j = i + 1; j < b.size(); ++j)
            flips += b[j];
    }
    return flips % 2 ? -1 : 1;
}

// sign collected when renamed letters are sorted back into ascending order
int rename_sort_sign(const std::vector<int>& w, const std::vector<int>& b) {
    int inv = 0;
    for (size_t k = 0; k < b.size(); ++k) {
        if (!b[k])
            continue;
        for (size_t l = k + 1; l < b.size(); ++l)
            if (b[l] && w[k] > w[l])
                ++inv;
    }
    return inv % 2 ? -1 : 1;
}

} // namespace

int SergMono::parity() const {
    return bits_set(b) % 2;
}

bool operator==(const SergMono& x, const SergMono& y) {
    return x.b == y.b && x.w == y.w;
}

bool operator<(const SergMono& x, const SergMono& y) {
    if (x.b != y.b)
        return x.b < y.b;
    return x.w < y.w;
}

bool operator==(const SergElement& x, const SergElement& y) {
    return x.r == y.r && x.terms == y.terms;
}

SergElement serg_zero(int r) {
    return SergElement{r, {}};
}

SergElement serg_one(int r) {
    SergElement e{r, {}};
    e.terms[SergMono{std::vector<int>(r, 0), identity_perm(r)}] = GRat(1);
    return e;
}

SergElement serg_gen_s(int r, int i) {
    check_index(i, 1, r - 1, "crossing");
    SergMono m{std::vector<int>(r, 0), identity_perm(r)};
    std::swap(m.w[i - 1], m.w[i]);
    SergElement e{r, {}};
    e.terms[m] = GRat(1);
    return e;
}

SergElement serg_gen_c(int r, int i) {
    check_index(i, 1, r, "clifford");
    SergMono m{std::vector<int>(r, 0), identity_perm(r)};
    m.b[i - 1] = 1;
    SergElement e{r, {}};
    e.terms[m] = GRat(1);
    return e;
}

void serg_add_term(SergElement& e, const SergMono& m, const GRat& c) {
    auto it = e.terms.find(m);
    if (it == e.terms.end()) {
        if (!c.is_zero())
            e.terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        e.terms.erase(it);
}

SergElement serg_add(const SergElement& x, const SergElement& y) {
    if (x.r != y.r)
        throw std::invalid_argument("rank mismatch in addition");
    SergElement out = x;
    for (const auto& [m, c] : y.terms)
        serg_add_term(out, m, c);
    return out;
}

SergElement serg_scale(const SergElement& x, const GRat& c) {
    SergElement out{x.r, {}};
    if (c.is_zero())
        return out;
    for (const auto& [m, v] : x.terms)
        out.terms.emplace(m, v * c);
    return out;
}

SergElement serg_mul(const SergElement& x, const SergElement& y) {
    if (x.r != y.r)
        throw std::invalid_argument("rank mismatch in product");
    SergElement out{x.r, {}};
    for (const auto& [m1, c1] : x.terms) {
        for (const auto& [m2, c2] : y.terms) {
            std::vector<int> renamed(x.r, 0);
            for (int k = 0; k < x.r; ++k)
                if (m2.b[k])
                    renamed[m1.w[k]] = 1;
            int sign = rename_sort_sign(m1.w, m2.b) * clifford_merge_sign(m1.b, renamed);
            SergMono prod;
            prod.b.resize(x.r);
            for (int k = 0; k < x.r; ++k)
                prod.b[k] = m1.b[k] ^ renamed[k];
            prod.w = perm_compose(m1.w, m2.w);
            serg_add_term(out, prod, c1 * c2 * GRat(sign));
        }
    }
    return out;
}

std::vector<SergMono> serg_basis(int r) {
    std::vector<SergMono> out;
    std::vector<int> w = identity_perm(r);
    do {
        for (long mask = 0; mask < (1L << r); ++mask) {
            SergMono m;
            m.b.resize(r);
            for (int k = 0; k < r; ++k)
                m.b[k] = (mask >> k) & 1;
            m.w = w;
            out.push_back(m);
        }
    } while (std::next_permutation(w.begin(), w.end()));
    std::sort(out.begin(), out.end());
    return out;
}

int ASergMono::parity() const {
    return bits_set(b) % 2;
}

int ASergMono::xdegree() const {
    int n = 0;
    for (int v : a)
        n += v;
    return n;
}

bool operator==(const ASergMono& x, const ASergMono& y) {
    return x.a == y.a && x.b == y.b && x.w == y.w;
}

bool operator<(const ASergMono& x, const ASergMono& y) {
    if (x.a != y.a)
        return x.a < y.a;
    if (x.b != y.b)
        return x.b < y.b;
    return x.w < y.w;
}

bool operator==(const ASergElement& x, const ASergElement& y) {
    return x.r == y.r && x.terms == y.terms;
}

ASergElement aserg_zero(int r) {
    return ASergElement{r, {}};
}

ASergElement aserg_one(int r) {
    ASergElement e{r, {}};
    e.terms[ASergMono{std::vector<int>(r, 0), std::vector<int>(r, 0), identity_perm(r)}] = GRat(1);
    return e;
}

ASergElement aserg_gen_s(int r, int i) {
    check_index(i, 1, r - 1, "crossing");
    ASergMono m{std::vector<int>(r, 0), std::vector<int>(r, 0), identity_perm(r)};
    std::swap(m.w[i - 1], m.w[i]);
    ASergElement e{r, {}};
    e.terms[m] = GRat(1);
    return e;
}

ASergElement aserg_gen_c(int r, int i) {
    check_index(i, 1, r, "clifford");
    ASergMono m{std::vector<int>(r, 0), std::vector<int>(r, 0), identity_perm(r)};
    m.b[i - 1] = 1;
    ASergElement e{r, {}};
    e.terms[m] = GRat(1);
    return e;
}

ASergElement aserg_gen_x(int r, int i) {
    check_index(i, 1, r, "polynomial");
    ASergMono m{std::vector<int>(r, 0), std::vector<int>(r, 0), identity_perm(r)};
    m.a[i - 1] = 1;
    ASergElement e{r, {}};
    e.terms[m] = GRat(1);
    return e;
}

void aserg_add_term(ASergElement& e, const ASergMono& m, const GRat& c) {
    auto it = e.terms.find(m);
    if (it == e.terms.end()) {
        if (!c.is_zero())
            e.terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        e.terms.erase(it);
}

ASergElement aserg_add(const ASergElement& x, const ASergElement& y) {
    if (x.r != y.r)
        throw std::invalid_argument("rank mismatch in addition");
    ASergElement out = x;
    for (const auto& [m, c] : y.terms)
        aserg_add_term(out, m, c);
    return out;
}

ASergElement aserg_scale(const ASergElement& x, const GRat& c) {
    ASergElement out{x.r, {}};
    if (c.is_zero())
        return out;
    for (const auto& [m, v] : x.terms)
        out.terms.emplace(m, v * c);
    return out;
}

namespace {

ASergElement left_x(int i, const ASergElement& e) {
    ASergElement out{e.r, {}};
    for (const auto& [m, c] : e.terms) {
        ASergMono m2 = m;
        m2.a[i - 1] += 1;
        aserg_add_term(out, m2, c);
    }
    return out;
}

ASergElement left_c(int i, const ASergElement& e) {
    ASergElement out{e.r, {}};
    for (const auto& [m, c] : e.terms) {
        int flips = m.a[i - 1];
        for (int j = 0; j < i - 1; ++j)
            flips += m.b[j];
        ASergMono m2 = m;
        m2.b[i - 1] ^= 1;
        aserg_add_term(out, m2, flips % 2 ? -c : c);
    }
    return out;
}

// left multiplication by the crossing of letters i and i+1; dots move past
// the crossing at the cost of the two correction terms of the presentation
ASergElement left_s(int i, const ASergElement& e) {
    ASergElement out{e.r, {}};
    for (const auto& [m, c] : e.terms) {
        if (m.a[i - 1] > 0) {
            ASergMono x = m;
            x.a[i - 1] -= 1;
            ASergElement rest{e.r, {{x, GRat(1)}}};
            ASergElement piece = left_x(i + 1, left_s(i, rest));
            piece = aserg_add(piece, aserg_scale(rest, GRat(-1)));
            piece = aserg_add(piece, aserg_scale(left_c(i, left_c(i + 1, rest)), GRat(-1)));
            for (const auto& [m2, c2] : piece.terms)
                aserg_add_term(out, m2, c * c2);
        } else if (m.a[i] > 0) {
            ASergMono x = m;
            x.a[i] -= 1;
            ASergElement rest{e.r, {{x, GRat(1)}}};
            ASergElement piece = left_x(i, left_s(i, rest));
            piece = aserg_add(piece, rest);
            piece = aserg_add(piece, aserg_scale(left_c(i, left_c(i + 1, rest)), GRat(-1)));
            for (const auto& [m2, c2] : piece.terms)
                aserg_add_term(out, m2, c * c2);
        } else {
            ASergMono m2 = m;
            std::swap(m2.b[i - 1], m2.b[i]);
            std::vector<int> si = identity_perm(e.r);
            std::swap(si[i - 1], si[i]);
            m2.w = perm_compose(si, m.w);
            int sign = (m.b[i - 1] && m.b[i]) ? -1 : 1;
            aserg_add_term(out, m2, c * GRat(sign));
        }
    }
    return out;
}

ASergElement left_mono(const ASergMono& m, const ASergElement& e) {
    ASergElement acc = e;
    std::vector<int> word = reduced_word(m.w);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        acc = left_s(*it, acc);
    for (int i = static_cast<int>(m.b.size()); i >= 1; --i)
        if (m.b[i - 1])
            acc = left_c(i, acc);
    for (int i = 1; i <= static_cast<int>(m.a.size()); ++i)
        for (int k = 0; k < m.a[i - 1]; ++k)
            acc = left_x(i, acc);
    return acc;
}

} // namespace

ASergElement aserg_mul(const ASergElement& x, const ASergElement& y) {
    if (x.r != y.r)
        throw std::invalid_argument("rank mismatch in product");
    ASergElement out{x.r, {}};
    for (const auto& [m1, c1] : x.terms) {
        for (const auto& [m2, c2] : y.terms) {
            ASergElement single{x.r, {{m2, GRat(1)}}};
            ASergElement piece = left_mono(m1, single);
            for (const auto& [m, c] : piece.terms)
                aserg_add_term(out, m, c1 * c2 * c);
        }
    }
    return out;
}

ASergElement aserg_straighten(int r, const std::vector<ASergMono>& factors) {
    ASergElement acc = aserg_one(r);
    for (const auto& m : factors) {
        ASergElement single{r, {{m, GRat(1)}}};
        acc = aserg_mul(acc, single);
    }
    return acc;
}

ASergElement aserg_from_serg(const SergElement& e) {
    ASergElement out{e.r, {}};
    for (const auto& [m, c] : e.terms)
        out.terms.emplace(ASergMono{std::vector<int>(e.r, 0), m.b, m.w}, c);
    return out;
}

namespace {

void cyclo_check(const CycloSerg& data) {
    if (data.n < 0 || data.ell < 0)
        throw std::invalid_argument("negative cyclotomic data");
    if (data.z.size() != static_cast<size_t>(data.ell / 2 + 1))
        throw std::invalid_argument("coefficient list does not match the degree");
    if (!(data.z[0] == GRat(1)))
        throw std::invalid_argument("polynomial is not monic");
}

// image of the ell-th power of the first letter under the quotient rule
ASergElement first_letter_rule(const CycloSerg& data) {
    ASergElement out{data.n, {}};
    for (size_t k = 1; k < data.z.size(); ++k) {
        ASergMono m{std::vector<int>(data.n, 0), std::vector<int>(data.n, 0),
                    identity_perm(data.n)};
        m.a[0] = data.ell - 2 * static_cast<int>(k);
        aserg_add_term(out, m, -data.z[k]);
    }
    return out;
}

ASergMono pure_power(int r, int j, int k) {
    ASergMono m{std::vector<int>(r, 0), std::vector<int>(r, 0), identity_perm(r)};
    m.a[j - 1] = k;
    return m;
}

// reductions of each letter's ell-th power, funnelled to the first letter
// through crossings; every entry has total degree below ell
std::vector<ASergElement> power_rules(const CycloSerg& data) {
    std::vector<ASergElement> red;
    red.push_back(first_letter_rule(data));
    for (int j = 2; j <= data.n; ++j) {
        ASergElement s = aserg_gen_s(data.n, j - 1);
        ASergElement conj = aserg_mul(s, aserg_mul(red.back(), s));
        ASergElement straight =
            aserg_mul(s, aserg_mul(ASergElement{data.n, {{pure_power(data.n, j - 1, data.ell), GRat(1)}}}, s));
        ASergElement tail = straight;
        aserg_add_term(tail, pure_power(data.n, j, data.ell), GRat(-1));
        red.push_back(aserg_add(conj, aserg_scale(tail, GRat(-1))));
    }
    return red;
}

} // namespace

ASergElement cyclo_reduce(const ASergElement& e, const CycloSerg& data) {
    cyclo_check(data);
    if (e.r != data.n)
        throw std::invalid_argument("rank mismatch with the cyclotomic data");
    std::vector<ASergElement> red = power_rules(data);
    ASergElement out{data.n, {}};
    std::map<ASergMono, GRat> work(e.terms.begin(), e.terms.end());
    while (!work.empty()) {
        auto it = work.begin();
        ASergMono m = it->first;
        GRat c = it->second;
        work.erase(it);
        if (c.is_zero())
            continue;
        int j = 0;
        for (int k = 0; k < data.n; ++k) {
            if (m.a[k] >= data.ell) {
                j = k + 1;
                break;
            }
        }
        if (j == 0) {
            aserg_add_term(out, m, c);
            continue;
        }
        ASergMono prefix = m;
        prefix.b.assign(data.n, 0);
        prefix.w = identity_perm(data.n);
        prefix.a[j - 1] -= data.ell;
        ASergMono suffix{std::vector<int>(data.n, 0), m.b, m.w};
        ASergElement repl = aserg_mul(ASergElement{data.n, {{prefix, GRat(1)}}},
                                      aserg_mul(red[j - 1], ASergElement{data.n, {{suffix, GRat(1)}}}));
        for (const auto& [m2, c2] : repl.terms) {
            auto slot = work.find(m2);
            if (slot == work.end())
                work.emplace(m2, c * c2);
            else {
                slot->second += c * c2;
                if (slot->second.is_zero())
                    work.erase(slot);
            }
        }
    }
    return out;
}

std::vector<ASergMono> cyclo_basis(const CycloSerg& data) {
    cyclo_check(data);
    std::vector<ASergMono> out;
    long count = 1;
    for (int k = 0; k < data.n; ++k)
        count *= data.ell;
    std::vector<int> w = identity_perm(data.n);
    do {
        for (long mask = 0; mask < (1L << data.n); ++mask) {
            for (long code = 0; code < count; ++code) {
                ASergMono m;
                m.a.resize(data.n);
                long rest = code;
                for (int k = 0; k < data.n; ++k) {
                    m.a[k] = static_cast<int>(rest % data.ell);
                    rest /= data.ell;
                }
                m.b.resize(data.n);
                for (int k = 0; k < data.n; ++k)
                    m.b[k] = (mask >> k) & 1;
                m.w = w;
                out.push_back(m);
            }
        }
    } while (std::next_permutation(w.begin(), w.end()));
    std::sort(out.begin(), out.end());
    return out;
}

Expr phi_image_s(int r, int i) {
    check_index(i, 1, r - 1, "crossing");
    return expr_layer(Word(r - i - 1, Dir::Up), GenKind::UpCross, Word(i - 1, Dir::Up));
}

Expr phi_image_c(int r, int i) {
    check_index(i, 1, r, "clifford");
    return expr_layer(Word(r - i, Dir::Up), GenKind::WhiteDot, Word(i - 1, Dir::Up));
}

Expr phi_image(int r, const SergMono& m) {
    Expr acc = expr_identity(Word(r, Dir::Up));
    for (int i = 1; i <= r; ++i)
        if (m.b[i - 1])
            acc = expr_compose(acc, phi_image_c(r, i));
    for (int i : reduced_word(m.w))
        acc = expr_compose(acc, phi_image_s(r, i));
    return acc;
}

Expr nu_image_s(int r, int i) {
    return phi_image_s(r, i);
}

Expr nu_image_c(int r, int i) {
    return phi_image_c(r, i);
}

Expr nu_image_x(int r, int i) {
    check_index(i, 1, r, "polynomial");
    return expr_layer(Word(r - i, Dir::Up), GenKind::BlackDot, Word(i - 1, Dir::Up));
}

Expr nu_image(int r, const ASergMono& m) {
    Expr acc = expr_identity(Word(r, Dir::Up));
    for (int i = 1; i <= r; ++i)
        for (int k = 0; k < m.a[i - 1]; ++k)
            acc = expr_compose(acc, nu_image_x(r, i));
    return expr_compose(acc, phi_image(r, SergMono{m.b, m.w}));
}

Expr gamma_image(int n, const ASergMono& m) {
    return nu_image(n, m);
}

namespace {

Word walled_object(int r, int s) {
    Word w(s, Dir::Down);
    w.insert(w.end(), r, Dir::Up);
    return w;
}

} // namespace

Expr alpha_image_s(int r, int s, int i) {
    if (i >= 1 && i <= r - 1) {
        Word left(s, Dir::Down);
        left.insert(left.end(), r - i - 1, Dir::Up);
        return expr_layer(left, GenKind::UpCross, Word(i - 1, Dir::Up));
    }
    if (i >= r + 1 && i <= r + s - 1) {
        Word right(i - r - 1, Dir::Down);
        right.insert(right.end(), r, Dir::Up);
        return expr_layer(Word(r + s - i - 1, Dir::Down), GenKind::DownCross, right);
    }
    throw std::invalid_argument("crossing index is out of range");
}

Expr alpha_image_e(int r, int s) {
    if (r < 1 || s < 1)
        throw std::invalid_argument("the wall generator needs a strand on each side");
    Word left(s - 1, Dir::Down);
    Word right(r - 1, Dir::Up);
    return expr_compose(expr_layer(left, GenKind::RCup, right),
                        expr_layer(left, GenKind::LCap, right));
}

Expr alpha_image_c(int r, int s, int i) {
    check_index(i, 1, r + s, "clifford");
    if (i <= r) {
        Word left(s, Dir::Down);
        left.insert(left.end(), r - i, Dir::Up);
        return expr_layer(left, GenKind::WhiteDot, Word(i - 1, Dir::Up)).scaled(grat_i());
    }
    Word right(i - r - 1, Dir::Down);
    right.insert(right.end(), r, Dir::Up);
    return expr_layer(Word(r + s - i, Dir::Down), GenKind::DownWhiteDot, right).scaled(grat_i());
}

namespace {

std::string gen_name(const char* stem, int i) {
    std::ostringstream os;
    os << stem << i;
    return os.str();
}

RelTerm one_term(std::vector<std::string> word) {
    return RelTerm{GRat(1), std::move(word)};
}

} // namespace

std::vector<Relation> sergeev_relations(int r) {
    std::vector<Relation> rels;
    for (int i = 1; i <= r - 1; ++i) {
        std::string si = gen_name("s", i);
        rels.push_back({si + " squared", {one_term({si, si})}, {one_term({})}});
    }
    for (int i = 1; i <= r - 1; ++i)
        for (int j = i + 2; j <= r - 1; ++j) {
            std::string si = gen_name("s", i), sj = gen_name("s", j);
            rels.push_back({si + " " + sj + " commute", {one_term({si, sj})}, {one_term({sj, si})}});
        }
    for (int i = 1; i <= r - 2; ++i) {
        std::string si = gen_name("s", i), sj = gen_name("s", i + 1);
        rels.push_back({si + " braid", {one_term({si, sj, si})}, {one_term({sj, si, sj})}});
    }
    for (int i = 1; i <= r; ++i) {
        std::string ci = gen_name("c", i);
        rels.push_back({ci + " squared", {one_term({ci, ci})}, {one_term({})}});
    }
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j) {
            std::string ci = gen_name("c", i), cj = gen_name("c", j);
            rels.push_back({ci + " " + cj + " anticommute",
                            {one_term({ci, cj})},
                            {RelTerm{GRat(-1), {cj, ci}}}});
        }
    for (int i = 1; i <= r - 1; ++i) {
        std::string si = gen_name("s", i);
        rels.push_back({si + " conjugates " + gen_name("c", i),
                        {one_term({si, gen_name("c", i)})},
                        {one_term({gen_name("c", i + 1), si})}});
        for (int j = 1; j <= r; ++j)
            if (j != i && j != i + 1)
                rels.push_back({si + " fixes " + gen_name("c", j),
                                {one_term({si, gen_name("c", j)})},
                                {one_term({gen_name("c", j), si})}});
    }
    return rels;
}

std::vector<Relation> aserg_relations(int r) {
    std::vector<Relation> rels = sergeev_relations(r);
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j) {
            std::string xi = gen_name("x", i), xj = gen_name("x", j);
            rels.push_back({xi + " " + xj + " commute", {one_term({xi, xj})}, {one_term({xj, xi})}});
        }
    for (int i = 1; i <= r; ++i) {
        std::string ci = gen_name("c", i), xi = gen_name("x", i);
        rels.push_back({ci + " " + xi + " anticommute",
                        {one_term({ci, xi})},
                        {RelTerm{GRat(-1), {xi, ci}}}});
        for (int j = 1; j <= r; ++j)
            if (j != i)
                rels.push_back({ci + " fixes " + gen_name("x", j),
                                {one_term({ci, gen_name("x", j)})},
                                {one_term({gen_name("x", j), ci})}});
    }
    for (int i = 1; i <= r - 1; ++i) {
        std::string si = gen_name("s", i);
        Relation rel;
        rel.name = si + " moves " + gen_name("x", i);
        rel.lhs = {one_term({si, gen_name("x", i)})};
        rel.rhs = {one_term({gen_name("x", i + 1), si}), RelTerm{GRat(-1), {}},
                   RelTerm{GRat(-1), {gen_name("c", i), gen_name("c", i + 1)}}};
        rels.push_back(rel);
    }
    return rels;
}

std::map<std::string, Expr> phi_images(int r) {
    std::map<std::string, Expr> out;
    for (int i = 1; i <= r - 1; ++i)
        out.emplace(gen_name("s", i), phi_image_s(r, i));
    for (int i = 1; i <= r; ++i)
        out.emplace(gen_name("c", i), phi_image_c(r, i));
    return out;
}

std::map<std::string, Expr> nu_images(int r) {
    std::map<std::string, Expr> out = phi_images(r);
    for (int i = 1; i <= r; ++i)
        out.emplace(gen_name("x", i), nu_image_x(r, i));
    return out;
}

WalledPresentation walled_presentation(int r, int s) {
    if (r < 0 || s < 0 || r + s < 1)
        throw std::invalid_argument("empty walled algebra");
    WalledPresentation p;
    p.r = r;
    p.s = s;
    for (int i = 1; i <= r + s - 1; ++i) {
        if (i == r)
            continue;
        p.gens.push_back(gen_name("s", i));
        p.images.emplace(p.gens.back(), alpha_image_s(r, s, i));
    }
    if (r >= 1 && s >= 1) {
        p.gens.push_back("e");
        p.images.emplace("e", alpha_image_e(r, s));
    }
    for (int i = 1; i <= r + s; ++i) {
        p.gens.push_back(gen_name("c", i));
        p.images.emplace(p.gens.back(), alpha_image_c(r, s, i));
    }

    auto has = [&](const std::string& g) { return p.images.count(g) > 0; };
    std::vector<Relation>& rels = p.relations;
    for (int i = 1; i <= r + s - 1; ++i) {
        if (i == r)
            continue;
        std::string si = gen_name("s", i);
        rels.push_back({si + " squared", {one_term({si, si})}, {one_term({})}});
        for (int j = i + 1; j <= r + s - 1; ++j) {
            if (j == r)
                continue;
            std::string sj = gen_name("s", j);
            if (j == i + 1 && has(sj)) {
                rels.push_back({si + " braid", {one_term({si, sj, si})}, {one_term({sj, si, sj})}});
            } else if (j > i + 1) {
                rels.push_back({si + " " + sj + " commute",
                                {one_term({si, sj})},
                                {one_term({sj, si})}});
            }
        }
    }
    if (has("e")) {
        rels.push_back({"e squared", {one_term({"e", "e"})}, {}});
        for (int i = 1; i <= r + s - 1; ++i) {
            if (i == r || i == r - 1 || i == r + 1 || !has(gen_name("s", i)))
                continue;
            std::string si = gen_name("s", i);
            rels.push_back({"e " + si + " commute", {one_term({"e", si})}, {one_term({si, "e"})}});
        }
        if (has(gen_name("s", r - 1)))
            rels.push_back({"e absorbs " + gen_name("s", r - 1),
                            {one_term({"e", gen_name("s", r - 1), "e"})},
                            {one_term({"e"})}});
        if (has(gen_name("s", r + 1)))
            rels.push_back({"e absorbs " + gen_name("s", r + 1),
                            {one_term({"e", gen_name("s", r + 1), "e"})},
                            {one_term({"e"})}});
        if (has(gen_name("s", r - 1)) && has(gen_name("s", r + 1))) {
            std::string a = gen_name("s", r - 1), b = gen_name("s", r + 1);
            rels.push_back({"wall exchange right",
                            {one_term({"e", a, b, "e", a})},
                            {one_term({"e", a, b, "e", b})}});
            rels.push_back({"wall exchange left",
                            {one_term({a, "e", a, b, "e"})},
                            {one_term({b, "e", a, b, "e"})}});
        }
    }
    for (int i = 1; i <= r + s; ++i) {
        std::string ci = gen_name("c", i);
        if (i <= r)
            rels.push_back({ci + " squared", {one_term({ci, ci})}, {RelTerm{GRat(-1), {}}}});
        else
            rels.push_back({ci + " squared", {one_term({ci, ci})}, {one_term({})}});
        for (int j = i + 1; j <= r + s; ++j) {
            std::string cj = gen_name("c", j);
            rels.push_back({ci + " " + cj + " anticommute",
                            {one_term({ci, cj})},
                            {RelTerm{GRat(-1), {cj, ci}}}});
        }
    }
    for (int i = 1; i <= r + s - 1; ++i) {
        if (i == r || !has(gen_name("s", i)))
            continue;
        std::string si = gen_name("s", i);
        rels.push_back({si + " conjugates " + gen_name("c", i),
                        {one_term({si, gen_name("c", i)})},
                        {one_term({gen_name("c", i + 1), si})}});
        for (int j = 1; j <= r + s; ++j)
            if (j != i && j != i + 1)
                rels.push_back({si + " fixes " + gen_name("c", j),
                                {one_term({si, gen_name("c", j)})},
                                {one_term({gen_name("c", j), si})}});
    }
    if (has("e")) {
        for (int j = 1; j <= r + s; ++j) {
            if (j == r || j == r + 1)
                continue;
            std::string cj = gen_name("c", j);
            rels.push_back({"e " + cj + " commute", {one_term({"e", cj})}, {one_term({cj, "e"})}});
        }
        std::string cr = gen_name("c", r), cw = gen_name("c", r + 1);
        rels.push_back({"e joins wall dots right",
                        {one_term({"e", cr})},
                        {one_term({"e", cw})}});
        rels.push_back({"e joins wall dots left",
                        {one_term({cr, "e"})},
                        {one_term({cw, "e"})}});
        rels.push_back({"e kills a wall dot", {one_term({"e", cr, "e"})}, {}});
    }
    return p;
}

std::vector<RelationCheck> verify_presentation(const std::vector<Relation>& rels,
                                               const std::map<std::string, Expr>& images) {
    if (images.empty())
        throw std::invalid_argument("no generator images");
    Word object = images.begin()->second.src;
    for (const auto& [name, img] : images)
        if (img.src != object || img.dst != object)
            throw std::invalid_argument("image of " + name + " is not an endomorphism");

    auto side = [&](const std::vector<RelTerm>& terms) {
        Expr sum = expr_zero(object, object);
        for (const auto& t : terms) {
            Expr prod = expr_identity(object);
            for (const auto& g : t.word) {
                auto it = images.find(g);
                if (it == images.end())
                    throw std::invalid_argument("no image for generator " + g);
                prod = expr_compose(prod, it->second);
            }
            sum = sum + prod.scaled(t.coeff);
        }
        return sum;
    };

    std::vector<RelationCheck> out;
    for (const auto& rel : rels) {
        RelationCheck chk;
        chk.name = rel.name;
        chk.residual = normalize(side(rel.lhs) - side(rel.rhs));
        chk.pass = chk.residual.is_zero();
        out.push_back(std::move(chk));
    }
    return out;
}

namespace {

std::string mono_label(const std::vector<int>& a, const std::vector<int>& b,
                       const std::vector<int>& w) {
    std::ostringstream os;
    bool empty = true;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        os << (empty ? "" : " ") << "x" << i + 1;
        if (a[i] > 1)
            os << "^" << a[i];
        empty = false;
    }
    for (size_t i = 0; i < b.size(); ++i) {
        if (!b[i])
            continue;
        os << (empty ? "" : " ") << "c" << i + 1;
        empty = false;
    }
    bool trivial = true;
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] != static_cast<int>(i))
            trivial = false;
    if (!trivial) {
        os << (empty ? "" : " ") << "w:";
        for (int v : w)
            os << v + 1;
        empty = false;
    }
    if (empty)
        os << "1";
    return os.str();
}

} // namespace

nlohmann::json serg_structure_constants(int r) {
    std::vector<SergMono> basis = serg_basis(r);
    std::map<SergMono, size_t> index;
    for (size_t k = 0; k < basis.size(); ++k)
        index.emplace(basis[k], k);
    nlohmann::json out;
    out["r"] = r;
    out["dim"] = basis.size();
    nlohmann::json names = nlohmann::json::array();
    for (const auto& m : basis)
        names.push_back(mono_label(std::vector<int>(r, 0), m.b, m.w));
    out["basis"] = names;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& mi : basis) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& mj : basis) {
            SergElement prod = serg_mul(SergElement{r, {{mi, GRat(1)}}},
                                        SergElement{r, {{mj, GRat(1)}}});
            std::vector<std::string> coeffs(basis.size(), "0");
            for (const auto& [m, c] : prod.terms)
                coeffs[index.at(m)] = grat_to_string(c);
            row.push_back(coeffs);
        }
        table.push_back(std::move(row));
    }
    out["table"] = std::move(table);
    return out;
}

nlohmann::json cyclo_structure_constants(const CycloSerg& data) {
    std::vector<ASergMono> basis = cyclo_basis(data);
    std::map<ASergMono, size_t> index;
    for (size_t k = 0; k < basis.size(); ++k)
        index.emplace(basis[k], k);
    nlohmann::json out;
    out["n"] = data.n;
    out["ell"] = data.ell;
    nlohmann::json zs = nlohmann::json::array();
    for (const auto& z : data.z)
        zs.push_back(grat_to_string(z));
    out["z"] = zs;
    out["dim"] = basis.size();
    nlohmann::json names = nlohmann::json::array();
    for (const auto& m : basis)
        names.push_back(mono_label(m.a, m.b, m.w));
    out["basis"] = names;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& mi : basis) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& mj : basis) {
            ASergElement prod = cyclo_reduce(aserg_mul(ASergElement{data.n, {{mi, GRat(1)}}},
                                                       ASergElement{data.n, {{mj, GRat(1)}}}),
                                             data);
            std::vector<std::string> coeffs(basis.size(), "0");
            for (const auto& [m, c] : prod.terms)
                coeffs[index.at(m)] = grat_to_string(c);
            row.push_back(coeffs);
        }
        table.push_back(std::move(row));
    }
    out["table"] = std::move(table);
    return out;
}

} // namespace obc

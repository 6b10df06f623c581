#include "obc/qn.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace obc {

std::vector<int> space_parity(const QnContext& ctx) {
    std::vector<int> p(2 * ctx.n, 0);
    for (int i = ctx.n; i < 2 * ctx.n; ++i) p[i] = 1;
    return p;
}

std::vector<int> word_space_parity(const QnContext& ctx, const Word& w) {
    std::vector<int> par{0};
    std::vector<int> v = space_parity(ctx);
    for (size_t k = 0; k < w.size(); ++k) {
        std::vector<int> next;
        next.reserve(par.size() * v.size());
        for (int a : par) {
            for (int b : v) next.push_back(a ^ b);
        }
        par = std::move(next);
    }
    return par;
}

SuperMatrix gen_matrix(const QnContext& ctx, const QGen& g) {
    int n = ctx.n;
    if (g.i < 1 || g.i > n || g.j < 1 || g.j > n)
        throw std::invalid_argument("generator index out of range");
    SuperMatrix m = SuperMatrix::zero(space_parity(ctx), space_parity(ctx));
    GRat second = g.tilde ? GRat(-1) : GRat(1);
    if (g.eps == 0) {
        m.add(g.i - 1, g.j - 1, GRat(1));
        m.add(n + g.i - 1, n + g.j - 1, second);
    } else {
        m.add(n + g.i - 1, g.j - 1, GRat(1));
        m.add(g.i - 1, n + g.j - 1, second);
    }
    return m;
}

namespace {

// action on the dual space: (y*)_{i,j} = -(-1)^{p(y) p_j} y_{j,i}
SuperMatrix dual_matrix(const SuperMatrix& y, int ypar) {
    SuperMatrix m = SuperMatrix::zero(y.col_par, y.row_par);
    for (const auto& [r, row] : y.rows) {
        for (const auto& [c, v] : row) {
            GRat w = -v;
            if (ypar && y.row_par[r]) w = -w;
            m.add(c, r, w);
        }
    }
    return m;
}

SuperMatrix word_identity(const QnContext& ctx, const Word& w) {
    return SuperMatrix::identity(word_space_parity(ctx, w));
}

} // namespace

SuperMatrix module_matrix(const QnContext& ctx, const QGen& g, const Word& a) {
    if (a.empty()) return SuperMatrix::zero({0}, {0});
    SuperMatrix base = gen_matrix(ctx, g);
    SuperMatrix total = SuperMatrix::zero(word_space_parity(ctx, a), word_space_parity(ctx, a));
    for (size_t k = 0; k < a.size(); ++k) {
        Word left(a.begin(), a.begin() + k);
        Word right(a.begin() + k + 1, a.end());
        SuperMatrix y = (a[k] == Dir::Up) ? base : dual_matrix(base, g.eps);
        SuperMatrix t = kron(word_identity(ctx, left), kron(y, word_identity(ctx, right)));
        total = total + t;
    }
    return total;
}

namespace {

SuperMatrix local_image(const QnContext& ctx, GenKind g);

SuperMatrix whiskered(const QnContext& ctx, const Word& left, GenKind g, const Word& right) {
    return kron(word_identity(ctx, left), kron(local_image(ctx, g), word_identity(ctx, right)));
}

SuperMatrix build_local(const QnContext& ctx, GenKind g) {
    int n = ctx.n;
    int d = 2 * n;
    Word u = word_parse("u");
    Word dn = word_parse("d");
    switch (g) {
    case GenKind::LCup: {
        SuperMatrix m = SuperMatrix::zero(word_space_parity(ctx, word_parse("ud")), {0});
        for (int i = 0; i < d; ++i) m.add(i * d + i, 0, GRat(1));
        return m;
    }
    case GenKind::LCap: {
        SuperMatrix m = SuperMatrix::zero({0}, word_space_parity(ctx, word_parse("du")));
        for (int i = 0; i < d; ++i) m.add(0, i * d + i, GRat(1));
        return m;
    }
    case GenKind::UpCross: {
        std::vector<int> par = word_space_parity(ctx, word_parse("uu"));
        SuperMatrix m = SuperMatrix::zero(par, par);
        std::vector<int> vp = space_parity(ctx);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                GRat v(1);
                if (vp[a] && vp[b]) v = GRat(-1);
                m.add(b * d + a, a * d + b, v);
            }
        }
        return m;
    }
    case GenKind::WhiteDot: {
        std::vector<int> par = space_parity(ctx);
        SuperMatrix m = SuperMatrix::zero(par, par);
        for (int t = 0; t < n; ++t) {
            m.add(n + t, t, grat_i());
            m.add(t, n + t, -grat_i());
        }
        return m;
    }
    case GenKind::RCross:
        return whiskered(ctx, {}, GenKind::LCap, word_parse("ud")) *
               whiskered(ctx, dn, GenKind::UpCross, dn) *
               whiskered(ctx, word_parse("du"), GenKind::LCup, {});
    case GenKind::LCross:
        return local_image(ctx, GenKind::RCross).inverse();
    case GenKind::RCup:
        return local_image(ctx, GenKind::LCross) * local_image(ctx, GenKind::LCup);
    case GenKind::RCap:
        return local_image(ctx, GenKind::LCap) * local_image(ctx, GenKind::LCross);
    case GenKind::DownCross:
        return whiskered(ctx, {}, GenKind::LCap, word_parse("dd")) *
               whiskered(ctx, dn, GenKind::RCross, dn) *
               whiskered(ctx, word_parse("dd"), GenKind::LCup, {});
    case GenKind::DownWhiteDot:
        return whiskered(ctx, {}, GenKind::LCap, dn) * whiskered(ctx, dn, GenKind::WhiteDot, dn) *
               whiskered(ctx, dn, GenKind::LCup, {});
    default:
        throw std::invalid_argument("black dots have no local matrix");
    }
}

SuperMatrix local_image(const QnContext& ctx, GenKind g) {
    static std::map<std::pair<int, int>, SuperMatrix> cache;
    auto key = std::make_pair(ctx.n, static_cast<int>(g));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SuperMatrix m = build_local(ctx, g);
    cache[key] = m;
    return m;
}

SuperMatrix eval_stack(const QnContext& ctx, const Stack& raw, const Word& src,
                       const Word& module, bool allow_black) {
    Stack s = stack_expand_down_blacks(raw);
    Word full_src = src;
    full_src.insert(full_src.end(), module.begin(), module.end());
    SuperMatrix acc = word_identity(ctx, full_src);
    for (const Layer& l : s) {
        if (l.gen == GenKind::BlackDot && !allow_black)
            throw std::invalid_argument("expression contains black dots; evaluate with psi_eval");
        Word right = l.right;
        right.insert(right.end(), module.begin(), module.end());
        acc = layer_matrix(ctx, Layer{l.left, l.gen, right}) * acc;
    }
    return acc;
}

SuperMatrix eval_expr(const QnContext& ctx, const Expr& e, const Word& module,
                      bool allow_black) {
    Word fsrc = e.src;
    fsrc.insert(fsrc.end(), module.begin(), module.end());
    Word fdst = e.dst;
    fdst.insert(fdst.end(), module.begin(), module.end());
    SuperMatrix total =
        SuperMatrix::zero(word_space_parity(ctx, fdst), word_space_parity(ctx, fsrc));
    for (const auto& [s, c] : e.terms) {
        total = total + eval_stack(ctx, s, e.src, module, allow_black).scaled(c);
    }
    return total;
}

} // namespace

SuperMatrix phi_eval(const QnContext& ctx, const Expr& e) {
    return eval_expr(ctx, e, {}, false);
}

SuperMatrix casimir_matrix(const QnContext& ctx, const Word& rest) {
    Word vrest = word_parse("u");
    vrest.insert(vrest.end(), rest.begin(), rest.end());
    SuperMatrix total =
        SuperMatrix::zero(word_space_parity(ctx, vrest), word_space_parity(ctx, vrest));
    for (int i = 1; i <= ctx.n; ++i) {
        for (int j = 1; j <= ctx.n; ++j) {
            for (int eps = 0; eps < 2; ++eps) {
                SuperMatrix t = kron(gen_matrix(ctx, QGen{true, i, j, eps}),
                                     module_matrix(ctx, QGen{false, j, i, eps}, rest));
                total = total + t;
            }
        }
    }
    return total;
}

SuperMatrix psi_eval(const QnContext& ctx, const Expr& e, const Word& module) {
    return eval_expr(ctx, e, module, true);
}

SuperMatrix layer_matrix(const QnContext& ctx, const Layer& l) {
    if (l.gen == GenKind::BlackDot)
        return kron(word_identity(ctx, l.left), casimir_matrix(ctx, l.right));
    if (l.gen == GenKind::DownBlackDot)
        throw std::invalid_argument("expand down black dots before building layer matrices");
    return whiskered(ctx, l.left, l.gen, l.right);
}

int sgn(const std::vector<int>& eps) {
    int k = static_cast<int>(eps.size());
    if (k < 1) throw std::invalid_argument("sgn of empty tuple");
    int exp = 0;
    // every other entry, from index k-1 down to 2 (k odd) or 1 (k even)
    for (int t = k - 1; t >= (k % 2 ? 2 : 1); t -= 2) exp += eps[t - 1];
    for (int r = 0; r < k; ++r) {
        for (int s = r + 1; s < k; ++s) exp += eps[r] * eps[s];
    }
    return exp % 2 ? -1 : 1;
}

int sgn_recursive(const std::vector<int>& eps) {
    int k = static_cast<int>(eps.size());
    if (k < 1) throw std::invalid_argument("sgn of empty tuple");
    if (k == 1) return 1;
    int lower = 0;
    for (int t = 0; t + 1 < k; ++t) lower += eps[t];
    std::vector<int> head(eps.begin(), eps.end() - 1);
    int s = sgn_recursive(head);
    return ((eps[k - 1] + 1) * lower) % 2 ? -s : s;
}

SuperMatrix central_element_matrix(const QnContext& ctx, int k, const Word& module) {
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("central element index must be a positive odd integer");
    std::map<std::pair<std::pair<int, int>, int>, SuperMatrix> table;
    for (int i = 1; i <= ctx.n; ++i) {
        for (int j = 1; j <= ctx.n; ++j) {
            for (int eps = 0; eps < 2; ++eps) {
                table[{{i, j}, eps}] = module_matrix(ctx, QGen{false, i, j, eps}, module);
            }
        }
    }
    std::vector<int> par = word_space_parity(ctx, module);
    SuperMatrix total = SuperMatrix::zero(par, par);
    std::vector<int> idx(k, 1);
    std::vector<int> eps(k, 0);
    while (true) {
        // sum over parity-even dot patterns for this index tuple
        while (true) {
            int psum = 0;
            for (int t = 0; t < k; ++t) psum += eps[t];
            if (psum % 2 == 0) {
                // e^{eps_k}_{i_{k-1},i_k} e^{eps_{k-1}}_{i_{k-2},i_{k-1}} ... e^{eps_1}_{i_k,i_1}
                SuperMatrix prod = table[{{idx[k - 1], idx[0]}, eps[0]}];
                for (int t = 2; t <= k; ++t) {
                    prod = table[{{idx[t - 2], idx[t - 1]}, eps[t - 1]}] * prod;
                }
                total = total + prod.scaled(GRat(2 * sgn(eps)));
            }
            int t = 0;
            while (t < k && eps[t] == 1) eps[t++] = 0;
            if (t == k) break;
            eps[t] = 1;
        }
        int t = 0;
        while (t < k && idx[t] == ctx.n) idx[t++] = 1;
        if (t == k) break;
        ++idx[t];
    }
    return total;
}

long commutant_dim(const QnContext& ctx, const Word& a) {
    long dim = 1;
    for (size_t t = 0; t < a.size(); ++t) {
        dim *= ctx.dim();
        if (dim > 256) throw std::runtime_error("commutant size cap exceeded");
    }
    std::vector<int> par = word_space_parity(ctx, a);
    // weight of each basis index under the even Cartan subalgebra
    std::vector<std::vector<int>> weight(dim, std::vector<int>(ctx.n, 0));
    for (long b = 0; b < dim; ++b) {
        long rem = b;
        for (int pos = static_cast<int>(a.size()) - 1; pos >= 0; --pos) {
            int digit = static_cast<int>(rem % ctx.dim());
            rem /= ctx.dim();
            int i0 = digit % ctx.n;
            weight[b][i0] += (a[pos] == Dir::Up) ? 1 : -1;
        }
    }
    std::vector<QGen> gens;
    for (int i = 1; i <= ctx.n; ++i) gens.push_back(QGen{false, i, i, 1});
    for (int i = 1; i < ctx.n; ++i) {
        for (int eps = 0; eps < 2; ++eps) {
            gens.push_back(QGen{false, i, i + 1, eps});
            gens.push_back(QGen{false, i + 1, i, eps});
        }
    }
    std::vector<SuperMatrix> gmats;
    gmats.reserve(gens.size());
    for (const QGen& g : gens) gmats.push_back(module_matrix(ctx, g, a));

    long total = 0;
    for (int pm = 0; pm < 2; ++pm) {
        std::map<std::pair<int, int>, long> uid;
        std::vector<std::vector<std::pair<int, long>>> by_first(dim);
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                if (weight[r] == weight[c] && ((par[r] ^ par[c]) == pm)) {
                    long id = static_cast<long>(uid.size());
                    uid[{r, c}] = id;
                    by_first[r].push_back({c, id});
                }
            }
        }
        std::vector<SparseVec> eqs;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            const SuperMatrix& G = gmats[gi];
            int sigma = (pm && gens[gi].eps) ? -1 : 1;
            std::map<std::pair<int, int>, SparseVec> rows;
            for (const auto& [u, id] : uid) {
                auto [p, q] = u;
                // (M G)_{p,c} picks up u_{p,q} G_{q,c}
                auto qit = G.rows.find(q);
                if (qit != G.rows.end()) {
                    for (const auto& [c, v] : qit->second) rows[{p, c}][id] += v;
                }
            }
            // (G M)_{r,q} picks up G_{r,p} u_{p,q}
            for (const auto& [r, grow] : G.rows) {
                for (const auto& [p, v] : grow) {
                    GRat w = v;
                    if (sigma < 0) w = -w;
                    for (const auto& [q, id] : by_first[p]) rows[{r, q}][id] -= w;
                }
            }
            for (auto& [key, row] : rows) {
                for (auto it = row.begin(); it != row.end();) {
                    it = it->second.is_zero() ? row.erase(it) : std::next(it);
                }
                if (!row.empty()) eqs.push_back(std::move(row));
            }
        }
        total += static_cast<long>(uid.size()) - rank_of_rows(std::move(eqs));
    }
    return total;
}

} // namespace obc

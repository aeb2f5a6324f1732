#include "uqa/specialize.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace uqa {

void LieBialgebra::add_bracket(int i, int j, int k, const Rat& c) {
    f(i, j, k) += c;
    f(j, i, k) -= c;
}

void LieBialgebra::add_cobracket(int k, int i, int j, const Rat& c) {
    g(k, i, j) += c;
    g(k, j, i) -= c;
}

LieBialgebra make_abelian_bialgebra(int dim) { return LieBialgebra(dim); }

LieBialgebra make_borel2_bialgebra() {
    LieBialgebra b(2); // a_1 = H, a_2 = E
    b.add_bracket(1, 2, 2, Rat(2));
    b.add_cobracket(2, 1, 2, Rat(1));
    return b;
}

BialgebraReport validate_bialgebra(const LieBialgebra& b) {
    const int d = b.dim;
    BialgebraReport rep;
    rep.antisym_bracket = rep.antisym_cobracket = rep.jacobi = rep.cojacobi = rep.cocycle = true;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            for (int k = 1; k <= d; ++k) {
                if (!(b.f(i, j, k) + b.f(j, i, k)).is_zero()) rep.antisym_bracket = false;
                if (!(b.g(k, i, j) + b.g(k, j, i)).is_zero()) rep.antisym_cobracket = false;
            }
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            for (int k = 1; k <= d; ++k)
                for (int p = 1; p <= d; ++p) {
                    Rat s(0);
                    for (int m = 1; m <= d; ++m)
                        s += b.f(j, k, m) * b.f(i, m, p) + b.f(k, i, m) * b.f(j, m, p) +
                             b.f(i, j, m) * b.f(k, m, p);
                    if (!s.is_zero()) rep.jacobi = false;
                }
    // cyclic sum of (delta x id) delta
    for (int k = 1; k <= d; ++k)
        for (int p = 1; p <= d; ++p)
            for (int q = 1; q <= d; ++q)
                for (int r = 1; r <= d; ++r) {
                    Rat s(0);
                    for (int m = 1; m <= d; ++m) {
                        s += b.g(k, m, r) * b.g(m, p, q); // (p,q,r)
                        s += b.g(k, m, p) * b.g(m, q, r); // rotate
                        s += b.g(k, m, q) * b.g(m, r, p); // rotate twice
                    }
                    if (!s.is_zero()) rep.cojacobi = false;
                }
    // delta[a_i,a_j] = a_i . delta(a_j) - a_j . delta(a_i)
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            for (int p = 1; p <= d; ++p)
                for (int q = 1; q <= d; ++q) {
                    Rat lhs(0), rhs(0);
                    for (int k = 1; k <= d; ++k) lhs += b.f(i, j, k) * b.g(k, p, q);
                    for (int m = 1; m <= d; ++m) {
                        rhs += b.g(j, m, q) * b.f(i, m, p) + b.g(j, p, m) * b.f(i, m, q);
                        rhs -= b.g(i, m, q) * b.f(j, m, p) + b.g(i, p, m) * b.f(j, m, q);
                    }
                    if (!(lhs - rhs).is_zero()) rep.cocycle = false;
                }
    return rep;
}

void pbw_add(PbwElem& acc, const PbwElem& e, const Rat& c) {
    for (const auto& [m, v] : e) {
        auto it = acc.find(m);
        if (it == acc.end()) {
            Rat cv = c * v;
            if (!cv.is_zero()) acc.emplace(m, std::move(cv));
        } else {
            it->second += c * v;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

PbwElem pbw_reduce(const DoubleAlgebra& D, const std::vector<int>& word, const Rat& coeff) {
    PbwElem out;
    std::vector<std::pair<std::vector<int>, Rat>> stack;
    stack.emplace_back(word, coeff);
    while (!stack.empty()) {
        auto [w, c] = std::move(stack.back());
        stack.pop_back();
        size_t k = 0;
        bool found = false;
        for (; k + 1 < w.size(); ++k)
            if (w[k] > w[k + 1]) {
                found = true;
                break;
            }
        if (!found) {
            auto it = out.find(w);
            if (it == out.end()) out.emplace(std::move(w), c);
            else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
            continue;
        }
        std::vector<int> sw = w;
        std::swap(sw[k], sw[k + 1]);
        stack.emplace_back(std::move(sw), c);
        for (const auto& [gen, bc] : D.bracket(w[k], w[k + 1])) {
            std::vector<int> bw;
            bw.reserve(w.size() - 1);
            bw.insert(bw.end(), w.begin(), w.begin() + k);
            bw.push_back(gen);
            bw.insert(bw.end(), w.begin() + k + 2, w.end());
            stack.emplace_back(std::move(bw), c * bc);
        }
    }
    return out;
}

PbwElem pbw_mul(const DoubleAlgebra& D, const PbwElem& x, const PbwElem& y) {
    PbwElem out;
    for (const auto& [mx, cx] : x)
        for (const auto& [my, cy] : y) {
            std::vector<int> w = mx;
            w.insert(w.end(), my.begin(), my.end());
            pbw_add(out, pbw_reduce(D, w, Rat(1)), cx * cy);
        }
    return out;
}

HSeries HSeries::zero(const DoubleAlgebra& D, int n, int horder) {
    (void)D;
    HSeries s;
    s.n = n;
    s.horder = horder;
    s.comp.assign(horder + 1, {});
    return s;
}

HSeries HSeries::one(const DoubleAlgebra& D, int n, int horder) {
    HSeries s = zero(D, n, horder);
    s.comp[0].emplace(TensorMono(n), Rat(1));
    return s;
}

void h_add(HSeries& acc, const HSeries& e, const Rat& c) {
    if (acc.n != e.n || acc.horder != e.horder) throw std::invalid_argument("h_add: shape mismatch");
    for (int k = 0; k <= acc.horder; ++k)
        for (const auto& [m, v] : e.comp[k]) {
            auto it = acc.comp[k].find(m);
            if (it == acc.comp[k].end()) {
                Rat cv = c * v;
                if (!cv.is_zero()) acc.comp[k].emplace(m, std::move(cv));
            } else {
                it->second += c * v;
                if (it->second.is_zero()) acc.comp[k].erase(it);
            }
        }
}

HSeries h_scale(const HSeries& a, const Rat& c) {
    HSeries out = HSeries{a.n, a.horder, {}};
    out.comp.assign(a.horder + 1, {});
    if (c.is_zero()) return out;
    for (int k = 0; k <= a.horder; ++k)
        for (const auto& [m, v] : a.comp[k]) out.comp[k].emplace(m, c * v);
    return out;
}

namespace {

TensorElem tensor_mul(const DoubleAlgebra& D, const TensorElem& x, const TensorElem& y, int n) {
    TensorElem out;
    for (const auto& [mx, cx] : x)
        for (const auto& [my, cy] : y) {
            // per-slot reductions, then the odometer over expansions
            std::vector<std::vector<std::pair<PbwMono, Rat>>> slots(n);
            bool dead = false;
            for (int s = 0; s < n && !dead; ++s) {
                std::vector<int> w = mx[s];
                w.insert(w.end(), my[s].begin(), my[s].end());
                PbwElem red = pbw_reduce(D, w, Rat(1));
                if (red.empty()) dead = true;
                for (const auto& [m, c] : red) slots[s].emplace_back(m, c);
            }
            if (dead) continue;
            std::vector<size_t> idx(n, 0);
            while (true) {
                TensorMono tm(n);
                Rat c = cx * cy;
                for (int s = 0; s < n; ++s) {
                    tm[s] = slots[s][idx[s]].first;
                    c *= slots[s][idx[s]].second;
                }
                auto it = out.find(tm);
                if (it == out.end()) {
                    if (!c.is_zero()) out.emplace(std::move(tm), c);
                } else {
                    it->second += c;
                    if (it->second.is_zero()) out.erase(it);
                }
                int p = 0;
                for (; p < n; ++p) {
                    if (++idx[p] < slots[p].size()) break;
                    idx[p] = 0;
                }
                if (p == n) break;
            }
        }
    return out;
}

} // namespace

HSeries h_mul(const DoubleAlgebra& D, const HSeries& a, const HSeries& b) {
    if (a.n != b.n || a.horder != b.horder) throw std::invalid_argument("h_mul: shape mismatch");
    HSeries out = HSeries::zero(D, a.n, a.horder);
    for (int i = 0; i <= a.horder; ++i) {
        if (a.comp[i].empty()) continue;
        for (int j = 0; i + j <= a.horder; ++j) {
            if (b.comp[j].empty()) continue;
            TensorElem prod = tensor_mul(D, a.comp[i], b.comp[j], a.n);
            for (const auto& [m, c] : prod) {
                auto it = out.comp[i + j].find(m);
                if (it == out.comp[i + j].end()) out.comp[i + j].emplace(m, c);
                else {
                    it->second += c;
                    if (it->second.is_zero()) out.comp[i + j].erase(it);
                }
            }
        }
    }
    return out;
}

HSeries h_inverse(const DoubleAlgebra& D, const HSeries& a) {
    HSeries one = HSeries::one(D, a.n, a.horder);
    if (!(a.comp[0] == one.comp[0]))
        throw std::invalid_argument("h_inverse: constant term must be 1");
    HSeries inv = one;
    for (int k = 1; k <= a.horder; ++k) {
        TensorElem acc;
        for (int j = 1; j <= k; ++j) {
            TensorElem prod = tensor_mul(D, a.comp[j], inv.comp[k - j], a.n);
            for (const auto& [m, c] : prod) {
                auto it = acc.find(m);
                if (it == acc.end()) acc.emplace(m, c);
                else {
                    it->second += c;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        }
        for (auto& [m, c] : acc) inv.comp[k][m] = -c;
    }
    return inv;
}

bool h_is_zero(const HSeries& a) {
    for (const auto& c : a.comp)
        if (!c.empty()) return false;
    return true;
}

HSeries h_insert(const HSeries& a, const std::vector<std::vector<int>>& blocks, int m) {
    if (static_cast<int>(blocks.size()) != a.n)
        throw std::invalid_argument("h_insert: block count mismatch");
    HSeries out;
    out.n = m;
    out.horder = a.horder;
    out.comp.assign(a.horder + 1, {});
    for (int k = 0; k <= a.horder; ++k) {
        for (const auto& [tm, c] : a.comp[k]) {
            // distribute each slot's letters over its block, orders kept;
            // target words stay sorted because source words are sorted
            struct Letter {
                int gen;
                const std::vector<int>* blk;
            };
            std::vector<Letter> letters;
            bool dead = false;
            for (int s = 0; s < a.n; ++s) {
                if (blocks[s].empty() && !tm[s].empty()) dead = true;
                for (int gen : tm[s]) letters.push_back({gen, &blocks[s]});
            }
            if (dead) continue;
            std::vector<size_t> idx(letters.size(), 0);
            while (true) {
                TensorMono target(m);
                for (size_t t = 0; t < letters.size(); ++t)
                    target[(*letters[t].blk)[idx[t]] - 1].push_back(letters[t].gen);
                auto it = out.comp[k].find(target);
                if (it == out.comp[k].end()) out.comp[k].emplace(std::move(target), c);
                else {
                    it->second += c;
                    if (it->second.is_zero()) out.comp[k].erase(it);
                }
                size_t p = 0;
                for (; p < letters.size(); ++p) {
                    if (++idx[p] < letters[p].blk->size()) break;
                    idx[p] = 0;
                }
                if (p == letters.size()) break;
            }
        }
    }
    return out;
}

HSeries specialize_element(const UElement& a, const DoubleAlgebra& D, int horder) {
    HSeries out = HSeries::zero(D, a.n, horder);
    const int d = D.d;
    for (const auto& [diag, c] : a.terms) {
        const int N = diag.degree();
        if (N > horder) continue;
        auto xw = diag.xwords();
        auto yw = diag.ywords();
        // iterate index assignments {1..N} -> {1..d}
        std::vector<int> tau(N, 1);
        while (true) {
            std::vector<std::vector<std::pair<PbwMono, Rat>>> slots(a.n);
            bool dead = false;
            for (int s = 0; s < a.n && !dead; ++s) {
                std::vector<int> word;
                for (Tag t : xw[s]) word.push_back(tau[t - 1] - 1);
                for (Tag t : yw[s]) word.push_back(d + tau[t - 1] - 1);
                PbwElem red = pbw_reduce(D, word, Rat(1));
                if (red.empty()) dead = true;
                for (const auto& [m, cc] : red) slots[s].emplace_back(m, cc);
            }
            if (!dead) {
                std::vector<size_t> idx(a.n, 0);
                while (true) {
                    TensorMono tm(a.n);
                    Rat cc = c;
                    for (int s = 0; s < a.n; ++s) {
                        tm[s] = slots[s][idx[s]].first;
                        cc *= slots[s][idx[s]].second;
                    }
                    auto it = out.comp[N].find(tm);
                    if (it == out.comp[N].end()) {
                        if (!cc.is_zero()) out.comp[N].emplace(std::move(tm), cc);
                    } else {
                        it->second += cc;
                        if (it->second.is_zero()) out.comp[N].erase(it);
                    }
                    int p = 0;
                    for (; p < a.n; ++p) {
                        if (++idx[p] < slots[p].size()) break;
                        idx[p] = 0;
                    }
                    if (p == a.n) break;
                }
            }
            int p = 0;
            for (; p < N; ++p) {
                if (++tau[p] <= d) break;
                tau[p] = 1;
            }
            if (p == N) break;
        }
    }
    return out;
}

HSeries specialize_series(const USeries& s, const DoubleAlgebra& D, int horder) {
    HSeries out = HSeries::zero(D, s.n, horder);
    for (int k = 0; k <= std::min(horder, s.order); ++k)
        h_add(out, specialize_element(s.comp[k], D, horder));
    return out;
}

HSeries ell_map(const DoubleAlgebra& D, const HSeries& R2, const PbwMono& xi) {
    if (R2.n != 2) throw std::invalid_argument("ell_map: need two slots");
    HSeries out = HSeries::zero(D, 1, R2.horder);
    for (int k = 0; k <= R2.horder; ++k)
        for (const auto& [tm, c] : R2.comp[k]) {
            if (tm[1] != xi) continue;
            TensorMono m1{tm[0]};
            auto it = out.comp[k].find(m1);
            if (it == out.comp[k].end()) out.comp[k].emplace(std::move(m1), c);
            else {
                it->second += c;
                if (it->second.is_zero()) out.comp[k].erase(it);
            }
        }
    return out;
}

DoubleAlgebra build_double(const LieBialgebra& b) {
    if (!validate_bialgebra(b).ok())
        throw std::invalid_argument("build_double: input fails the bialgebra relations");
    const int d = b.dim;

    auto make_candidate = [&](int s1, int s2) {
        DoubleAlgebra D;
        D.base = b;
        D.d = d;
        D.sign_fb = s1;
        D.sign_ga = s2;
        D.table.assign(4 * d * d, {});
        auto add = [&](int u, int v, int w, const Rat& c) {
            if (c.is_zero()) return;
            auto& m = D.table[u * 2 * d + v];
            m[w] += c;
            if (m[w].is_zero()) m.erase(w);
        };
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                for (int k = 1; k <= d; ++k) {
                    add(i - 1, j - 1, k - 1, b.f(i, j, k));          // [a_i,a_j]
                    add(d + i - 1, d + j - 1, d + k - 1, b.g(k, i, j)); // [b^i,b^j]
                }
                // [a_i, b^j] = s1 sum_m f(i,m,j) b^m + s2 sum_m g(i,j,m) a_m
                for (int m = 1; m <= d; ++m) {
                    add(i - 1, d + j - 1, d + m - 1, Rat(s1) * b.f(i, m, j));
                    add(i - 1, d + j - 1, m - 1, Rat(s2) * b.g(i, j, m));
                    add(d + j - 1, i - 1, d + m - 1, Rat(-s1) * b.f(i, m, j));
                    add(d + j - 1, i - 1, m - 1, Rat(-s2) * b.g(i, j, m));
                }
            }
        return D;
    };

    auto jacobi_ok = [&](const DoubleAlgebra& D) {
        const int n = 2 * d;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                for (int w = 0; w < n; ++w) {
                    std::map<int, Rat> acc;
                    auto addb = [&](int x, int y, const Rat& c) {
                        for (const auto& [gen, bc] : D.bracket(x, y)) {
                            acc[gen] += c * bc;
                            if (acc[gen].is_zero()) acc.erase(gen);
                        }
                    };
                    // [[u,v],w] + [[v,w],u] + [[w,u],v]
                    for (const auto& [gen, bc] : D.bracket(u, v)) addb(gen, w, bc);
                    for (const auto& [gen, bc] : D.bracket(v, w)) addb(gen, u, bc);
                    for (const auto& [gen, bc] : D.bracket(w, u)) addb(gen, v, bc);
                    if (!acc.empty()) return false;
                }
        return true;
    };

    auto cybe_ok = [&](const DoubleAlgebra& D) {
        // r = sum_i a_i (x) b^i in the first/second of three slots
        auto rr = [&](int s1p, int s2p) {
            HSeries h = HSeries::zero(D, 3, 2);
            for (int i = 0; i < d; ++i) {
                TensorMono tm(3);
                tm[s1p].push_back(i);
                tm[s2p].push_back(d + i);
                h.comp[1].emplace(std::move(tm), Rat(1));
            }
            return h;
        };
        auto comm = [&](const HSeries& x, const HSeries& y) {
            HSeries c = h_mul(D, x, y);
            h_add(c, h_mul(D, y, x), Rat(-1));
            return c;
        };
        HSeries acc = comm(rr(0, 1), rr(0, 2));
        h_add(acc, comm(rr(0, 1), rr(1, 2)));
        h_add(acc, comm(rr(0, 2), rr(1, 2)));
        return h_is_zero(acc);
    };

    auto hom_ok = [&](const DoubleAlgebra& D) {
        // specialization must be multiplicative on mixed products
        const UElement r = make_r();
        const UElement r21 = make_r21();
        const UElement mr1 = u_insert(make_mr(), {{1}}, 2);
        const UElement mr2 = u_insert(make_mr(), {{2}}, 2);
        std::vector<std::pair<UElement, UElement>> pairs = {
            {r, r21}, {r21, r}, {mr1, r21}, {r21, mr1}, {mr2, r}, {r, mr2}};
        for (const auto& [x, y] : pairs) {
            HSeries lhs = specialize_element(u_product(x, y), D, 2);
            HSeries rhs = h_mul(D, specialize_element(x, D, 2), specialize_element(y, D, 2));
            h_add(lhs, rhs, Rat(-1));
            if (!h_is_zero(lhs)) return false;
        }
        return true;
    };

    for (int s1 : {-1, 1})
        for (int s2 : {1, -1}) {
            DoubleAlgebra D = make_candidate(s1, s2);
            if (jacobi_ok(D) && cybe_ok(D) && hom_ok(D)) return D;
        }
    throw std::runtime_error("build_double: no mixed-bracket convention passed the self-test");
}

namespace {

// ---- symmetric-algebra side -------------------------------------------------

using SaMono = PbwMono; // sorted commutative monomials (a-side or b-side)
using SaElem = std::map<SaMono, Rat>;

void sa_add(SaElem& acc, const SaMono& m, const Rat& c) {
    if (c.is_zero()) return;
    auto it = acc.find(m);
    if (it == acc.end()) acc.emplace(m, c);
    else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

struct SaSeries {
    int horder = 0;
    std::vector<SaElem> comp;
    static SaSeries zero(int horder) {
        SaSeries s;
        s.horder = horder;
        s.comp.assign(horder + 1, {});
        return s;
    }
    bool is_zero() const {
        for (const auto& c : comp)
            if (!c.empty()) return false;
        return true;
    }
};

bool sa_equal(const SaSeries& a, const SaSeries& b) {
    return a.comp == b.comp;
}

// tensor powers of the symmetric algebra
using SaTensor = std::map<std::vector<SaMono>, Rat>;
struct SaTensorSeries {
    int n = 0;
    int horder = 0;
    std::vector<SaTensor> comp;
    static SaTensorSeries zero(int n, int horder) {
        SaTensorSeries s;
        s.n = n;
        s.horder = horder;
        s.comp.assign(horder + 1, {});
        return s;
    }
};

void sat_add(SaTensorSeries& acc, int k, const std::vector<SaMono>& m, const Rat& c) {
    if (c.is_zero()) return;
    auto it = acc.comp[k].find(m);
    if (it == acc.comp[k].end()) acc.comp[k].emplace(m, c);
    else {
        it->second += c;
        if (it->second.is_zero()) acc.comp[k].erase(it);
    }
}

void sa_strip(SaSeries& s, int cap) {
    for (int k = 0; k <= s.horder; ++k)
        for (auto it = s.comp[k].begin(); it != s.comp[k].end();) {
            if (k + static_cast<int>(it->first.size()) > cap) it = s.comp[k].erase(it);
            else ++it;
        }
}

void sat_strip(SaTensorSeries& s, int cap) {
    for (int k = 0; k <= s.horder; ++k)
        for (auto it = s.comp[k].begin(); it != s.comp[k].end();) {
            int w = k;
            for (const auto& m : it->first) w += static_cast<int>(m.size());
            if (w > cap) it = s.comp[k].erase(it);
            else ++it;
        }
}

// symmetrization corrections: sym(m) = m + lower-degree PBW terms, so the
// inverse unwinds by degree recursion
class SymTable {
public:
    explicit SymTable(const DoubleAlgebra& D) : D_(&D) {}

    // symmetrization of a commutative monomial, as a PBW element
    const PbwElem& sym_of(const SaMono& m) {
        auto it = sym_cache_.find(m);
        if (it != sym_cache_.end()) return it->second;
        PbwElem out;
        std::vector<int> w = m;
        std::sort(w.begin(), w.end());
        Rat f = uqa::inv(factorial(static_cast<int>(w.size())));
        do {
            pbw_add(out, pbw_reduce(*D_, w, Rat(1)), f);
        } while (std::next_permutation(w.begin(), w.end()));
        return sym_cache_.emplace(m, std::move(out)).first->second;
    }

    // inverse symmetrization of a pure-side PBW monomial
    const SaElem& sym_inv(const PbwMono& m) {
        auto it = inv_cache_.find(m);
        if (it != inv_cache_.end()) return it->second;
        SaElem out;
        sa_add(out, m, Rat(1));
        for (const auto& [mu, c] : sym_of(m)) {
            if (mu == m) continue;
            for (const auto& [nu, cc] : sym_inv(mu)) sa_add(out, nu, -(c * cc));
        }
        return inv_cache_.emplace(m, std::move(out)).first->second;
    }

private:
    const DoubleAlgebra* D_;
    std::map<SaMono, PbwElem> sym_cache_;
    std::map<PbwMono, SaElem> inv_cache_;
};

struct FlatnessContext {
    const DoubleAlgebra& D;
    int K;
    HSeries R, J, Jinv;
    SymTable symA, symB;

    FlatnessContext(const DoubleAlgebra& Dref, const Twist& tw, int horder)
        : D(Dref),
          K(horder),
          R(HSeries::zero(Dref, 2, horder)),
          J(HSeries::zero(Dref, 2, horder)),
          Jinv(HSeries::zero(Dref, 2, horder)),
          symA(Dref),
          symB(Dref) {
        RMatrix rm = build_R(tw);
        R = specialize_series(rm.r_series, D, K);
        J = specialize_series(tw.j, D, K);
        Jinv = specialize_series(useries_inverse(tw.j), D, K);
    }

    bool is_pure_a(const PbwMono& m) const {
        for (int g : m)
            if (g >= D.d) return false;
        return true;
    }
    bool is_pure_b(const PbwMono& m) const {
        for (int g : m)
            if (g < D.d) return false;
        return true;
    }

    // <i(x), m>: zero unless the a-part of m is empty; otherwise the x-dual
    // coefficient of the inverse symmetrization of the b-part
    Rat i_pair(const SaMono& x, const PbwMono& m) {
        size_t split = 0;
        while (split < m.size() && m[split] < D.d) ++split;
        if (split != 0) return Rat(0);
        PbwMono bpart(m.begin(), m.end());
        SaMono want(x.size());
        for (size_t t = 0; t < x.size(); ++t) want[t] = x[t] + D.d;
        const SaElem& dec = symB.sym_inv(bpart);
        auto it = dec.find(want);
        return it == dec.end() ? Rat(0) : it->second;
    }

    // ell(i(x)) as a one-slot series
    HSeries ell_i(const SaSeries& x) {
        HSeries out = HSeries::zero(D, 1, K);
        for (int i = 0; i <= K; ++i)
            for (const auto& [mono, cx] : x.comp[i])
                for (int k = 0; i + k <= K; ++k)
                    for (const auto& [tm, c] : R.comp[k]) {
                        Rat p = i_pair(mono, tm[1]);
                        if (p.is_zero()) continue;
                        TensorMono m1{tm[0]};
                        auto it = out.comp[i + k].find(m1);
                        if (it == out.comp[i + k].end()) out.comp[i + k].emplace(std::move(m1), cx * c * p);
                        else {
                            it->second += cx * c * p;
                            if (it->second.is_zero()) out.comp[i + k].erase(it);
                        }
                    }
        return out;
    }

    // p: kill terms with a b-part, then invert the a-side symmetrization
    SaSeries p_map(const HSeries& u) {
        SaSeries out = SaSeries::zero(K);
        for (int k = 0; k <= K; ++k)
            for (const auto& [tm, c] : u.comp[k]) {
                if (!is_pure_a(tm[0])) continue;
                for (const auto& [mono, cc] : symA.sym_inv(tm[0])) sa_add(out.comp[k], mono, c * cc);
            }
        return out;
    }

    SaSeries lambda_of(const SaSeries& x) { return p_map(ell_i(x)); }

    // enumeration of a-monomials of degree <= cap
    std::vector<SaMono> monos_up_to(int cap) const {
        std::vector<SaMono> out;
        std::function<void(SaMono&, int, int)> rec = [&](SaMono& cur, int start, int left) {
            out.push_back(cur);
            if (left == 0) return;
            for (int g = start; g < D.d; ++g) {
                cur.push_back(g);
                rec(cur, g, left - 1);
                cur.pop_back();
            }
        };
        SaMono cur;
        rec(cur, 0, cap);
        std::sort(out.begin(), out.end(), [](const SaMono& a, const SaMono& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // joint solve of (lambda x ... x lambda)(X) = z over n-fold tensors,
    // unknown coordinates restricted to total weight <= K
    SaTensorSeries lambda_inv_tensor(const SaTensorSeries& z) {
        const int n = z.n;
        auto monos = monos_up_to(K);
        std::map<SaMono, SaSeries> lam;
        for (const auto& m : monos) {
            SaSeries s = SaSeries::zero(K);
            sa_add(s.comp[0], m, Rat(1));
            lam.emplace(m, lambda_of(s));
        }
        // unknowns: (i, m_1..m_n) with i + sum deg <= K
        struct Unknown {
            int i;
            std::vector<SaMono> m;
        };
        std::vector<Unknown> unknowns;
        std::vector<std::vector<SaMono>> tuples;
        {
            std::vector<SaMono> cur(n);
            std::function<void(int, int)> rec = [&](int slot, int left) {
                if (slot == n) {
                    tuples.push_back(cur);
                    return;
                }
                for (const auto& m : monos) {
                    if (static_cast<int>(m.size()) > left) continue;
                    cur[slot] = m;
                    rec(slot + 1, left - static_cast<int>(m.size()));
                }
            };
            rec(0, K);
        }
        for (const auto& tup : tuples) {
            int degsum = 0;
            for (const auto& m : tup) degsum += static_cast<int>(m.size());
            for (int i = 0; i + degsum <= K; ++i) unknowns.push_back({i, tup});
        }
        // rows: (h-order k, tensor monomial)
        std::map<std::pair<int, std::vector<SaMono>>, int> rowidx;
        std::vector<SparseVec> cols(unknowns.size());
        auto image_of = [&](const Unknown& u) {
            // product over slots of lam(m_s), shifted by h^i
            SaTensorSeries img = SaTensorSeries::zero(n, K);
            // start with the h^i unit in every slot? build by folding
            std::vector<const SaSeries*> ls;
            for (const auto& m : u.m) ls.push_back(&lam.at(m));
            // fold: iterate over h-order splits
            std::function<void(int, int, std::vector<SaMono>&, const Rat&)> rec =
                [&](int slot, int used, std::vector<SaMono>& acc, const Rat& c) {
                    if (slot == n) {
                        sat_add(img, used, acc, c);
                        return;
                    }
                    for (int k = 0; used + k <= K; ++k)
                        for (const auto& [m, cc] : ls[slot]->comp[k]) {
                            acc.push_back(m);
                            rec(slot + 1, used + k, acc, c * cc);
                            acc.pop_back();
                        }
                };
            std::vector<SaMono> acc;
            rec(0, u.i, acc, Rat(1));
            return img;
        };
        for (size_t j = 0; j < unknowns.size(); ++j) {
            SaTensorSeries img = image_of(unknowns[j]);
            for (int k = 0; k <= K; ++k)
                for (const auto& [m, c] : img.comp[k]) {
                    auto key = std::make_pair(k, m);
                    auto it = rowidx.find(key);
                    if (it == rowidx.end()) it = rowidx.emplace(key, static_cast<int>(rowidx.size())).first;
                    cols[j].emplace_back(it->second, c);
                }
        }
        for (int k = 0; k <= K; ++k)
            for (const auto& [m, c] : z.comp[k]) {
                auto key = std::make_pair(k, m);
                if (!rowidx.count(key))
                    throw std::runtime_error("flatness: target leaves the solvable span");
            }
        const int nrows = static_cast<int>(rowidx.size());
        SparseMatrix mat(nrows, static_cast<int>(unknowns.size()));
        for (size_t j = 0; j < unknowns.size(); ++j)
            for (const auto& [rix, c] : cols[j]) mat.add(rix, static_cast<int>(j), c);
        std::vector<Rat> rhs(nrows, Rat(0));
        for (int k = 0; k <= K; ++k)
            for (const auto& [m, c] : z.comp[k]) rhs[rowidx.at(std::make_pair(k, m))] = c;
        auto x = solve(mat, rhs);
        if (!x) throw std::runtime_error("flatness: inverse symmetric-map solve is inconsistent");
        SaTensorSeries out = SaTensorSeries::zero(n, K);
        for (size_t j = 0; j < unknowns.size(); ++j)
            sat_add(out, unknowns[j].i, unknowns[j].m, (*x)[j]);
        return out;
    }

    SaSeries lambda_inv(const SaSeries& z) {
        SaTensorSeries zz = SaTensorSeries::zero(1, K);
        for (int k = 0; k <= K; ++k)
            for (const auto& [m, c] : z.comp[k]) sat_add(zz, k, {m}, c);
        SaTensorSeries xx = lambda_inv_tensor(zz);
        SaSeries out = SaSeries::zero(K);
        for (int k = 0; k <= K; ++k)
            for (const auto& [m, c] : xx.comp[k]) sa_add(out.comp[k], m[0], c);
        return out;
    }

    // transported product on the symmetric algebra
    SaSeries star(const SaSeries& x, const SaSeries& y) {
        HSeries u = h_mul(D, ell_i(x), ell_i(y));
        return lambda_inv(p_map(u));
    }

    // transported coproduct
    SaTensorSeries cop(const SaSeries& x) {
        HSeries u = ell_i(x);
        HSeries du = h_insert(u, {{1, 2}}, 2);
        HSeries conj = h_mul(D, J, h_mul(D, du, Jinv));
        // slotwise p, then joint inverse
        SaTensorSeries z = SaTensorSeries::zero(2, K);
        for (int k = 0; k <= K; ++k)
            for (const auto& [tm, c] : conj.comp[k]) {
                if (!is_pure_a(tm[0]) || !is_pure_a(tm[1])) continue;
                for (const auto& [m0, c0] : symA.sym_inv(tm[0]))
                    for (const auto& [m1, c1] : symA.sym_inv(tm[1]))
                        sat_add(z, k, {m0, m1}, c * c0 * c1);
            }
        return lambda_inv_tensor(z);
    }

    // memoized monomial-level star and coproduct
    const SaSeries& star_mono(const SaMono& a, const SaMono& b) {
        auto key = std::make_pair(a, b);
        auto it = star_cache_.find(key);
        if (it != star_cache_.end()) return it->second;
        SaSeries xa = SaSeries::zero(K), xb = SaSeries::zero(K);
        sa_add(xa.comp[0], a, Rat(1));
        sa_add(xb.comp[0], b, Rat(1));
        return star_cache_.emplace(key, star(xa, xb)).first->second;
    }

    const SaTensorSeries& cop_mono(const SaMono& a) {
        auto it = cop_cache_.find(a);
        if (it != cop_cache_.end()) return it->second;
        SaSeries xa = SaSeries::zero(K);
        sa_add(xa.comp[0], a, Rat(1));
        return cop_cache_.emplace(a, cop(xa)).first->second;
    }

    SaSeries star_series(const SaSeries& x, const SaSeries& y) {
        SaSeries out = SaSeries::zero(K);
        for (int i = 0; i <= K; ++i)
            for (const auto& [mx, cx] : x.comp[i])
                for (int j = 0; i + j <= K; ++j)
                    for (const auto& [my, cy] : y.comp[j]) {
                        const SaSeries& s = star_mono(mx, my);
                        for (int k = 0; i + j + k <= K; ++k)
                            for (const auto& [m, c] : s.comp[k])
                                sa_add(out.comp[i + j + k], m, cx * cy * c);
                    }
        sa_strip(out, K);
        return out;
    }

    // coproduct applied to one leg of a tensor series
    SaTensorSeries cop_slot(const SaTensorSeries& t, int slot) {
        SaTensorSeries out = SaTensorSeries::zero(t.n + 1, K);
        for (int k = 0; k <= K; ++k)
            for (const auto& [mm, c] : t.comp[k]) {
                const SaTensorSeries& d = cop_mono(mm[slot - 1]);
                for (int k2 = 0; k + k2 <= K; ++k2)
                    for (const auto& [dd, c2] : d.comp[k2]) {
                        std::vector<SaMono> tuple;
                        tuple.reserve(t.n + 1);
                        for (int s = 0; s < t.n; ++s) {
                            if (s == slot - 1) {
                                tuple.push_back(dd[0]);
                                tuple.push_back(dd[1]);
                            } else {
                                tuple.push_back(mm[s]);
                            }
                        }
                        sat_add(out, k + k2, tuple, c * c2);
                    }
            }
        sat_strip(out, K);
        return out;
    }

    // componentwise star on two-leg tensor series
    SaTensorSeries star_tensor2(const SaTensorSeries& x, const SaTensorSeries& y) {
        SaTensorSeries out = SaTensorSeries::zero(2, K);
        for (int i = 0; i <= K; ++i)
            for (const auto& [mx, cx] : x.comp[i])
                for (int j = 0; i + j <= K; ++j)
                    for (const auto& [my, cy] : y.comp[j]) {
                        const SaSeries& s0 = star_mono(mx[0], my[0]);
                        const SaSeries& s1 = star_mono(mx[1], my[1]);
                        for (int k0 = 0; i + j + k0 <= K; ++k0)
                            for (const auto& [m0, c0] : s0.comp[k0])
                                for (int k1 = 0; i + j + k0 + k1 <= K; ++k1)
                                    for (const auto& [m1, c1] : s1.comp[k1])
                                        sat_add(out, i + j + k0 + k1, {m0, m1},
                                                cx * cy * c0 * c1);
                    }
        sat_strip(out, K);
        return out;
    }

private:
    std::map<std::pair<SaMono, SaMono>, SaSeries> star_cache_;
    std::map<SaMono, SaTensorSeries> cop_cache_;
};

SaSeries sa_of_mono(const SaMono& m, int K) {
    SaSeries s = SaSeries::zero(K);
    sa_add(s.comp[0], m, Rat(1));
    return s;
}

} // namespace

QuantizeReport quantize(const LieBialgebra& b, const Twist& tw, int horder) {
    QuantizeReport rep;
    DoubleAlgebra D = build_double(b);
    const int K = horder;
    RMatrix rm = build_R(tw);
    if (tw.order < K) throw std::invalid_argument("quantize: twist order too small");
    HSeries R = specialize_series(rm.r_series, D, K);
    HSeries J = specialize_series(tw.j, D, K);
    HSeries Jinv = specialize_series(useries_inverse(tw.j), D, K);

    auto ins = [&](const HSeries& x, std::vector<std::vector<int>> blocks, int m) {
        return h_insert(x, blocks, m);
    };
    auto conj = [&](const HSeries& g, const HSeries& ginv, const HSeries& x) {
        return h_mul(D, g, h_mul(D, x, ginv));
    };

    // twisted coproduct on one-slot series
    auto delta_j = [&](const HSeries& x) { return conj(J, Jinv, ins(x, {{1, 2}}, 2)); };

    {
        // coassociativity on the generators
        bool ok = true;
        for (int gidx = 0; gidx < 2 * D.d && ok; ++gidx) {
            HSeries x = HSeries::zero(D, 1, K);
            x.comp[0].emplace(TensorMono{{PbwMono{gidx}}}, Rat(1));
            HSeries dx = delta_j(x);
            HSeries lhs = conj(ins(J, {{1}, {2}}, 3), ins(Jinv, {{1}, {2}}, 3),
                               ins(dx, {{1, 2}, {3}}, 3));
            HSeries rhs = conj(ins(J, {{2}, {3}}, 3), ins(Jinv, {{2}, {3}}, 3),
                               ins(dx, {{1}, {2, 3}}, 3));
            h_add(lhs, rhs, Rat(-1));
            ok = h_is_zero(lhs);
        }
        rep.lines.push_back({"quantize.coassociativity", ok, "twisted coproduct on generators"});
    }
    {
        HSeries r12 = ins(R, {{1}, {2}}, 3), r13 = ins(R, {{1}, {3}}, 3), r23 = ins(R, {{2}, {3}}, 3);
        HSeries lhs = h_mul(D, r12, h_mul(D, r13, r23));
        h_add(lhs, h_mul(D, r23, h_mul(D, r13, r12)), Rat(-1));
        rep.lines.push_back({"quantize.qybe", h_is_zero(lhs), "quantum Yang-Baxter"});
    }
    {
        HSeries r13 = ins(R, {{1}, {3}}, 3), r23 = ins(R, {{2}, {3}}, 3), r12 = ins(R, {{1}, {2}}, 3);
        HSeries lhs1 = conj(ins(J, {{1}, {2}}, 3), ins(Jinv, {{1}, {2}}, 3), ins(R, {{1, 2}, {3}}, 3));
        h_add(lhs1, h_mul(D, r13, r23), Rat(-1));
        HSeries lhs2 = conj(ins(J, {{2}, {3}}, 3), ins(Jinv, {{2}, {3}}, 3), ins(R, {{1}, {2, 3}}, 3));
        h_add(lhs2, h_mul(D, r13, r12), Rat(-1));
        rep.lines.push_back(
            {"quantize.quasitriangular", h_is_zero(lhs1) && h_is_zero(lhs2), "both split identities"});
    }
    {
        bool ok = true;
        for (int k = 1; k <= K && ok; ++k)
            for (const auto& [tm, c] : R.comp[k]) {
                bool has_b = false;
                for (int g : tm[1]) has_b = has_b || g >= D.d;
                if (!has_b) ok = false;
            }
        rep.lines.push_back({"quantize.second-slot-form", ok, "R - 1 carries a b in the second slot"});
    }
    {
        // quasiclassical limit: the linear coefficient of the twisted
        // coproduct on the a-generators antisymmetrizes to the cobracket
        bool ok = true;
        for (int gidx = 1; gidx <= D.d && ok; ++gidx) {
            HSeries x = HSeries::zero(D, 1, K);
            x.comp[0].emplace(TensorMono{{PbwMono{gidx - 1}}}, Rat(1));
            HSeries dx = delta_j(x);
            std::map<std::pair<int, int>, Rat> got;
            for (const auto& [tm, c] : dx.comp[1])
                if (tm[0].size() == 1 && tm[1].size() == 1 && tm[0][0] < D.d && tm[1][0] < D.d)
                    got[{tm[0][0] + 1, tm[1][0] + 1}] += c;
            for (int i = 1; i <= D.d; ++i)
                for (int j = 1; j <= D.d; ++j)
                    if (!(got[{i, j}] - got[{j, i}] - b.g(gidx, i, j)).is_zero()) ok = false;
        }
        rep.lines.push_back({"quantize.quasiclassical", ok,
                             "linear coefficient of the coproduct returns the cobracket"});
    }
    return rep;
}

QuantizeReport flatness_check(const LieBialgebra& b, const Twist& tw, int horder, int degcap) {
    QuantizeReport rep;
    DoubleAlgebra D = build_double(b);
    if (tw.order < horder) throw std::invalid_argument("flatness_check: twist order too small");
    // The transported structures live in a weight filtration (series order
    // plus polynomial degree); comparisons are exact in the weight quotient.
    const int W = std::min(tw.order, horder + degcap);
    FlatnessContext ctx(D, tw, W);
    const int K = W;

    {
        // duals of nonempty plain a-monomials are killed exactly
        bool ok = true;
        for (const auto& m : ctx.monos_up_to(std::max(degcap, 1))) {
            if (m.empty()) continue;
            if (!h_is_zero(ell_map(D, ctx.R, m))) ok = false;
        }
        rep.lines.push_back({"flatness.kills-a-duals", ok, "contraction against plain a-monomials"});
    }
    {
        // triangular invertibility of the composed map, degree by degree
        bool ok = true;
        for (int j = 0; j <= std::min(K, degcap); ++j) {
            std::vector<SaMono> degj;
            for (const auto& m : ctx.monos_up_to(K))
                if (static_cast<int>(m.size()) == j) degj.push_back(m);
            std::map<SaMono, int> idx;
            for (const auto& m : degj) idx.emplace(m, static_cast<int>(idx.size()));
            SparseMatrix T(static_cast<int>(degj.size()), static_cast<int>(degj.size()));
            for (size_t col = 0; col < degj.size(); ++col) {
                SaSeries lm = ctx.lambda_of(sa_of_mono(degj[col], K));
                for (const auto& [m, c] : lm.comp[j]) {
                    auto it = idx.find(m);
                    if (it != idx.end()) T.add(it->second, static_cast<int>(col), c);
                }
            }
            if (rank(T) != T.cols()) ok = false;
        }
        rep.lines.push_back({"flatness.triangular-invertible", ok, "leading blocks of the composed map"});
    }

    auto monos = ctx.monos_up_to(degcap);
    {
        bool ok = true;
        for (const auto& mx : monos)
            for (const auto& my : monos) {
                if (!ok) break;
                SaSeries xy = ctx.star_mono(mx, my);
                for (const auto& mz : monos) {
                    SaSeries z = sa_of_mono(mz, K);
                    SaSeries lhs = ctx.star_series(xy, z);
                    SaSeries rhs = ctx.star_series(sa_of_mono(mx, K), ctx.star_mono(my, mz));
                    if (!sa_equal(lhs, rhs)) {
                        ok = false;
                        break;
                    }
                }
            }
        rep.lines.push_back({"flatness.star-associative", ok, "monomials up to the degree cap"});
    }
    {
        bool ok = true;
        for (const auto& m : monos) {
            SaSeries x = sa_of_mono(m, K);
            if (!sa_equal(ctx.star_mono({}, m), x) || !sa_equal(ctx.star_mono(m, {}), x)) ok = false;
        }
        rep.lines.push_back({"flatness.star-unital", ok, ""});
    }
    {
        // counit and coassociativity of the transported coproduct
        bool ok_coassoc = true, ok_counit = true;
        for (const auto& m : monos) {
            SaSeries x = sa_of_mono(m, K);
            const SaTensorSeries& dx = ctx.cop_mono(m);
            SaSeries left = SaSeries::zero(K), right = SaSeries::zero(K);
            for (int k = 0; k <= K; ++k)
                for (const auto& [mm, c] : dx.comp[k]) {
                    if (mm[0].empty()) sa_add(left.comp[k], mm[1], c);
                    if (mm[1].empty()) sa_add(right.comp[k], mm[0], c);
                }
            if (!sa_equal(left, x) || !sa_equal(right, x)) ok_counit = false;

            SaTensorSeries lhs = ctx.cop_slot(dx, 1);
            SaTensorSeries rhs = ctx.cop_slot(dx, 2);
            if (!(lhs.comp == rhs.comp)) ok_coassoc = false;
        }
        rep.lines.push_back({"flatness.cop-counit", ok_counit, ""});
        rep.lines.push_back({"flatness.cop-coassociative", ok_coassoc, ""});
    }
    {
        // compatibility: cop(x * y) = cop(x) cop(y) with the componentwise product
        bool ok = true;
        for (const auto& mx : monos)
            for (const auto& my : monos) {
                const SaSeries& xy = ctx.star_mono(mx, my);
                SaTensorSeries lhs = SaTensorSeries::zero(2, K);
                for (int k = 0; k <= K; ++k)
                    for (const auto& [m, c] : xy.comp[k]) {
                        const SaTensorSeries& d = ctx.cop_mono(m);
                        for (int k2 = 0; k + k2 <= K; ++k2)
                            for (const auto& [mm, c2] : d.comp[k2]) sat_add(lhs, k + k2, mm, c * c2);
                    }
                sat_strip(lhs, ctx.K);
                SaTensorSeries rhs = ctx.star_tensor2(ctx.cop_mono(mx), ctx.cop_mono(my));
                for (int k = 0; k <= K; ++k)
                    for (const auto& [mm, c] : rhs.comp[k]) sat_add(lhs, k, mm, -c);
                bool zero = true;
                for (const auto& cmp : lhs.comp) zero = zero && cmp.empty();
                if (!zero) ok = false;
            }
        rep.lines.push_back({"flatness.bialgebra-compat", ok, ""});
    }
    {
        // quasiclassical limit: the antisymmetrized linear coefficient of the
        // transported coproduct on generators returns the cobracket
        // The symmetric-algebra transport rescales by one series order per
        // polynomial degree, so the cobracket shadow sits in the constant
        // coefficient of the transported coproduct.
        bool ok = true;
        std::ostringstream detail;
        for (int gidx = 1; gidx <= D.d; ++gidx) {
            const SaTensorSeries& dx = ctx.cop_mono({gidx - 1});
            std::map<std::pair<int, int>, Rat> got;
            for (const auto& [mm, c] : dx.comp[0])
                if (mm[0].size() == 1 && mm[1].size() == 1) got[{mm[0][0] + 1, mm[1][0] + 1}] += c;
            for (int i = 1; i <= D.d; ++i)
                for (int j = 1; j <= D.d; ++j) {
                    Rat anti = got[{i, j}] - got[{j, i}];
                    if (!(anti - b.g(gidx, i, j)).is_zero()) {
                        ok = false;
                        detail << " gen" << gidx << "(" << i << "," << j << "): got " << anti.str()
                               << " want " << b.g(gidx, i, j).str() << ";";
                    }
                }
        }
        rep.lines.push_back({"flatness.quasiclassical", ok && K >= 3,
                             K < 3 ? std::string("needs twist order at least 3")
                                   : (ok ? std::string("linear coefficient equals the cobracket")
                                         : detail.str())});
    }
    return rep;
}

} // namespace uqa

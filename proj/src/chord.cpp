#include "uqa/chord.hpp"

#include <algorithm>
#include <stdexcept>

namespace uqa {

int ChordGen::pack(int i, int j) {
    if (!(0 < i && i < j)) throw std::invalid_argument("ChordGen::pack: need 0 < i < j");
    return (j - 1) * (j - 2) / 2 + (i - 1);
}

std::pair<int, int> ChordGen::unpack(int id) {
    int j = 2;
    while (j * (j - 1) / 2 <= id) ++j;
    int i = id - (j - 1) * (j - 2) / 2 + 1;
    return {i, j};
}

int ChordElement::min_degree() const {
    if (terms.empty()) return 0;
    size_t d = terms.begin()->first.size();
    for (const auto& [w, c] : terms) d = std::min(d, w.size());
    return static_cast<int>(d);
}

ChordElement chord_zero(int n) { return ChordElement{n, {}}; }

ChordElement chord_one(int n) {
    ChordElement e{n, {}};
    e.terms.emplace(ChordWord{}, Rat(1));
    return e;
}

ChordElement chord_gen(int n, int i, int j) {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument("chord_gen: bad indices");
    if (i > j) std::swap(i, j);
    ChordElement e{n, {}};
    e.terms.emplace(ChordWord{ChordGen::pack(i, j)}, Rat(1));
    return e;
}

void chord_add(ChordElement& acc, const ChordElement& e, const Rat& c) {
    if (acc.n != e.n) throw std::invalid_argument("chord_add: strand mismatch");
    for (const auto& [w, v] : e.terms) {
        auto it = acc.terms.find(w);
        if (it == acc.terms.end()) {
            Rat cv = c * v;
            if (!cv.is_zero()) acc.terms.emplace(w, std::move(cv));
        } else {
            it->second += c * v;
            if (it->second.is_zero()) acc.terms.erase(it);
        }
    }
}

ChordElement chord_scale(const ChordElement& a, const Rat& c) {
    ChordElement out{a.n, {}};
    if (c.is_zero()) return out;
    for (const auto& [w, v] : a.terms) out.terms.emplace(w, c * v);
    return out;
}

ChordElement chord_sub(const ChordElement& a, const ChordElement& b) {
    ChordElement out = a;
    chord_add(out, b, Rat(-1));
    return out;
}

// Normal ordering: push higher-block letters to the right. Leftmost adjacent
// violation first. Each step either swaps (disjoint indices) or applies
// t_{an} t_{ab} = t_{ab} t_{an} + t_{bn} t_{an} - t_{an} t_{bn};
// termination: a letter moves right or the top-block letter count grows.
ChordElement chord_normalize_word(int n, const ChordWord& w0, const Rat& coeff) {
    ChordElement out{n, {}};
    std::vector<std::pair<ChordWord, Rat>> stack;
    stack.emplace_back(w0, coeff);
    while (!stack.empty()) {
        auto [w, c] = std::move(stack.back());
        stack.pop_back();
        size_t k = 0;
        bool found = false;
        for (; k + 1 < w.size(); ++k) {
            if (ChordGen::block(w[k]) > ChordGen::block(w[k + 1])) { found = true; break; }
        }
        if (!found) {
            auto it = out.terms.find(w);
            if (it == out.terms.end()) out.terms.emplace(std::move(w), c);
            else {
                it->second += c;
                if (it->second.is_zero()) out.terms.erase(it);
            }
            continue;
        }
        auto [i1, j1] = ChordGen::unpack(w[k]);
        auto [i2, j2] = ChordGen::unpack(w[k + 1]);
        ChordWord sw = w;
        std::swap(sw[k], sw[k + 1]);
        stack.emplace_back(std::move(sw), c);
        // common index (if any) must be i1: j1 exceeds both i2, j2
        if (i1 == i2 || i1 == j2) {
            int beta = (i1 == i2) ? j2 : i2;
            int gBN = ChordGen::pack(std::min(beta, j1), std::max(beta, j1));
            int gAN = w[k];
            ChordWord w1 = w, w2 = w;
            w1[k] = gBN; w1[k + 1] = gAN;
            w2[k] = gAN; w2[k + 1] = gBN;
            stack.emplace_back(std::move(w1), c);
            stack.emplace_back(std::move(w2), -c);
        }
    }
    return out;
}

ChordElement chord_product(const ChordElement& a, const ChordElement& b) {
    if (a.n != b.n) throw std::invalid_argument("chord_product: strand mismatch");
    ChordElement out{a.n, {}};
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            ChordWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            chord_add(out, chord_normalize_word(a.n, w, Rat(1)), ca * cb);
        }
    return out;
}

ChordElement chord_commutator(const ChordElement& a, const ChordElement& b) {
    return chord_sub(chord_product(a, b), chord_product(b, a));
}

ChordElement chord_insert(const ChordElement& a, const std::vector<std::vector<int>>& blocks, int m) {
    std::vector<bool> used(m + 1, false);
    for (const auto& blk : blocks)
        for (int v : blk) {
            if (v < 1 || v > m || used[v])
                throw std::invalid_argument("chord_insert: blocks not disjoint in range");
            used[v] = true;
        }
    if (static_cast<int>(blocks.size()) != a.n)
        throw std::invalid_argument("chord_insert: block count != strands");
    ChordElement out = chord_zero(m);
    for (const auto& [w, c] : a.terms) {
        ChordElement acc = chord_scale(chord_one(m), c);
        for (int id : w) {
            auto [i, j] = ChordGen::unpack(id);
            ChordElement g = chord_zero(m);
            for (int al : blocks[i - 1])
                for (int be : blocks[j - 1]) chord_add(g, chord_gen(m, al, be));
            acc = chord_product(acc, g);
            if (acc.is_zero()) break;
        }
        chord_add(out, acc);
    }
    return out;
}

ChordElement chord_permute(const ChordElement& a, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != a.n)
        throw std::invalid_argument("chord_permute: bad permutation size");
    ChordElement out = chord_zero(a.n);
    for (const auto& [w, c] : a.terms) {
        ChordWord img;
        img.reserve(w.size());
        for (int id : w) {
            auto [i, j] = ChordGen::unpack(id);
            int si = sigma[i - 1], sj = sigma[j - 1];
            if (si > sj) std::swap(si, sj);
            img.push_back(ChordGen::pack(si, sj));
        }
        chord_add(out, chord_normalize_word(a.n, img, c));
    }
    return out;
}

namespace {
void permutations_with_sign(int n, std::vector<std::pair<std::vector<int>, int>>& out) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        out.emplace_back(p, inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(p.begin(), p.end()));
}
} // namespace

ChordElement chord_alt(const ChordElement& a) {
    std::vector<std::pair<std::vector<int>, int>> perms;
    permutations_with_sign(a.n, perms);
    ChordElement out = chord_zero(a.n);
    Rat f = inv(factorial(a.n));
    for (const auto& [p, sgn] : perms) chord_add(out, chord_permute(a, p), f * Rat(sgn));
    return out;
}

ChordElement chord_component(const ChordElement& a, int deg) {
    ChordElement out = chord_zero(a.n);
    for (const auto& [w, c] : a.terms)
        if (static_cast<int>(w.size()) == deg) out.terms.emplace(w, c);
    return out;
}

namespace {
void enum_words(int maxblock_letters, int nblocks, int deg, ChordWord& cur,
                std::vector<ChordWord>& out, int blockpos, int blockbase,
                const std::vector<int>& blocksizes) {
    // cur holds letters for blocks < blockpos; append block-blockpos words
    if (blockpos == nblocks) {
        if (deg == 0) out.push_back(cur);
        return;
    }
    (void)maxblock_letters;
    // choose a word of length 0..deg over the alphabet of block blockpos
    int alpha = blocksizes[blockpos];
    std::vector<int> word;
    // iterate lengths
    for (int len = 0; len <= deg; ++len) {
        // enumerate all alpha^len words
        std::vector<int> idx(len, 0);
        while (true) {
            size_t save = cur.size();
            for (int v : idx) cur.push_back(blockbase + v);
            enum_words(maxblock_letters, nblocks, deg - len, cur, out, blockpos + 1,
                       blockbase + alpha, blocksizes);
            cur.resize(save);
            int p = len - 1;
            while (p >= 0 && idx[p] == alpha - 1) { idx[p] = 0; --p; }
            if (p < 0) break;
            ++idx[p];
        }
        if (len == deg) break;
    }
}
} // namespace

std::vector<ChordWord> chord_basis(int n, int deg) {
    std::vector<ChordWord> out;
    std::vector<int> blocksizes;
    for (int j = 2; j <= n; ++j) blocksizes.push_back(j - 1);
    ChordWord cur;
    enum_words(0, static_cast<int>(blocksizes.size()), deg, cur, out, 0, 0, blocksizes);
    std::sort(out.begin(), out.end());
    return out;
}

ChordSeries ChordSeries::one(int n, int order) {
    ChordSeries s{n, order, {}};
    s.comp.assign(order + 1, chord_zero(n));
    s.comp[0] = chord_one(n);
    return s;
}

ChordSeries ChordSeries::from_element(const ChordElement& e, int order) {
    ChordSeries s{e.n, order, {}};
    s.comp.assign(order + 1, chord_zero(e.n));
    for (const auto& [w, c] : e.terms) {
        int d = static_cast<int>(w.size());
        if (d <= order) s.comp[d].terms.emplace(w, c);
    }
    return s;
}

ChordElement ChordSeries::collapse() const {
    ChordElement out = chord_zero(n);
    for (const auto& c : comp) chord_add(out, c);
    return out;
}

ChordSeries series_add(const ChordSeries& a, const ChordSeries& b) {
    if (a.n != b.n || a.order != b.order) throw std::invalid_argument("series_add: shape mismatch");
    ChordSeries s = a;
    for (int k = 0; k <= s.order; ++k) chord_add(s.comp[k], b.comp[k]);
    return s;
}

ChordSeries series_scale(const ChordSeries& a, const Rat& c) {
    ChordSeries s = a;
    for (auto& e : s.comp) e = chord_scale(e, c);
    return s;
}

ChordSeries series_mul(const ChordSeries& a, const ChordSeries& b) {
    if (a.n != b.n || a.order != b.order) throw std::invalid_argument("series_mul: shape mismatch");
    ChordSeries s{a.n, a.order, {}};
    s.comp.assign(a.order + 1, chord_zero(a.n));
    for (int i = 0; i <= a.order; ++i) {
        if (a.comp[i].is_zero()) continue;
        for (int j = 0; i + j <= a.order; ++j) {
            if (b.comp[j].is_zero()) continue;
            chord_add(s.comp[i + j], chord_product(a.comp[i], b.comp[j]));
        }
    }
    return s;
}

ChordSeries series_inverse(const ChordSeries& s) {
    if (!(s.comp[0].terms.size() == 1 && s.comp[0].terms.begin()->first.empty() &&
          s.comp[0].terms.begin()->second == Rat(1)))
        throw std::invalid_argument("series_inverse: constant term must be 1");
    ChordSeries inv = ChordSeries::one(s.n, s.order);
    for (int k = 1; k <= s.order; ++k) {
        ChordElement acc = chord_zero(s.n);
        for (int j = 1; j <= k; ++j) chord_add(acc, chord_product(s.comp[j], inv.comp[k - j]));
        inv.comp[k] = chord_scale(acc, Rat(-1));
    }
    return inv;
}

ChordSeries series_exp(const ChordSeries& s) {
    if (!s.comp[0].is_zero())
        throw std::invalid_argument("series_exp: constant term must be 0");
    ChordSeries out = ChordSeries::one(s.n, s.order);
    ChordSeries pw = ChordSeries::one(s.n, s.order);
    Rat fact(1);
    for (int k = 1; k <= s.order; ++k) {
        pw = series_mul(pw, s);
        fact *= Rat(k);
        ChordSeries t = series_scale(pw, inv(fact));
        out = series_add(out, t);
        bool all_zero = true;
        for (const auto& e : pw.comp) all_zero = all_zero && e.is_zero();
        if (all_zero) break;
    }
    return out;
}

bool series_is_zero(const ChordSeries& s) {
    for (const auto& e : s.comp)
        if (!e.is_zero()) return false;
    return true;
}

ChordPair chord_coproduct(const ChordElement& a) {
    ChordPair out;
    for (const auto& [w, c] : a.terms) {
        size_t k = w.size();
        for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
            ChordWord left, right;
            for (size_t p = 0; p < k; ++p)
                ((mask >> p) & 1 ? left : right).push_back(w[p]);
            ChordElement ln = chord_normalize_word(a.n, left, Rat(1));
            ChordElement rn = chord_normalize_word(a.n, right, Rat(1));
            for (const auto& [lw, lc] : ln.terms)
                for (const auto& [rw, rc] : rn.terms) {
                    auto key = std::make_pair(lw, rw);
                    auto it = out.find(key);
                    Rat v = c * lc * rc;
                    if (it == out.end()) out.emplace(key, v);
                    else {
                        it->second += v;
                        if (it->second.is_zero()) out.erase(it);
                    }
                }
        }
    }
    return out;
}

std::string chord_word_str(const ChordWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (int id : w) {
        auto [i, j] = ChordGen::unpack(id);
        s += "t" + std::to_string(i) + std::to_string(j);
    }
    return s;
}

} // namespace uqa

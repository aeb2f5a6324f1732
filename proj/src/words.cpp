#include "uqa/words.hpp"

#include "uqa/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uqa {

LieMono LieMono::node(const LieMono& l, const LieMono& r) {
    LieMono m;
    m.code.reserve(1 + l.code.size() + r.code.size());
    m.code.push_back(-1);
    m.code.insert(m.code.end(), l.code.begin(), l.code.end());
    m.code.insert(m.code.end(), r.code.begin(), r.code.end());
    return m;
}

namespace {
// Length of the subtree starting at position i of a prefix code.
size_t subtree_len(const std::vector<int>& code, size_t i) {
    if (code[i] > 0) return 1;
    size_t l = subtree_len(code, i + 1);
    size_t r = subtree_len(code, i + 1 + l);
    return 1 + l + r;
}
} // namespace

std::pair<LieMono, LieMono> LieMono::children() const {
    if (is_leaf()) throw std::logic_error("LieMono::children on leaf");
    size_t ll = subtree_len(code, 1);
    LieMono l, r;
    l.code.assign(code.begin() + 1, code.begin() + 1 + ll);
    r.code.assign(code.begin() + 1 + ll, code.end());
    return {l, r};
}

int LieMono::size() const {
    int k = 0;
    for (int v : code)
        if (v > 0) ++k;
    return k;
}

void LieMono::collect_tags(std::vector<Tag>& out) const {
    for (int v : code)
        if (v > 0) out.push_back(v);
}

std::vector<Tag> LieMono::tags() const {
    std::vector<Tag> t;
    collect_tags(t);
    return t;
}

bool LieMono::contains_tag(Tag t) const {
    for (int v : code)
        if (v == t) return true;
    return false;
}

bool LieMono::graft(Tag t, const LieMono& m) {
    for (size_t i = 0; i < code.size(); ++i) {
        if (code[i] == t) {
            std::vector<int> next;
            next.reserve(code.size() + m.code.size() - 1);
            next.insert(next.end(), code.begin(), code.begin() + i);
            next.insert(next.end(), m.code.begin(), m.code.end());
            next.insert(next.end(), code.begin() + i + 1, code.end());
            code = std::move(next);
            return true;
        }
    }
    return false;
}

std::string LieMono::str() const {
    if (is_leaf()) return std::to_string(code[0]);
    auto [l, r] = children();
    return "[" + l.str() + "," + r.str() + "]";
}

void word_add(WordMap& acc, const AssocWord& w, const Rat& c) {
    if (c.is_zero()) return;
    auto it = acc.find(w);
    if (it == acc.end()) acc.emplace(w, c);
    else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

void lie_add(LieElement& acc, const LieMono& m, const Rat& c) {
    if (c.is_zero()) return;
    auto it = acc.find(m);
    if (it == acc.end()) acc.emplace(m, c);
    else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

WordMap expand_word(const LieMono& m) {
    if (m.is_leaf()) return {{AssocWord{m.leaf_tag()}, Rat(1)}};
    auto [l, r] = m.children();
    WordMap el = expand_word(l), er = expand_word(r);
    WordMap out;
    for (const auto& [wl, cl] : el)
        for (const auto& [wr, cr] : er) {
            AssocWord lr = wl;
            lr.insert(lr.end(), wr.begin(), wr.end());
            word_add(out, lr, cl * cr);
            AssocWord rl = wr;
            rl.insert(rl.end(), wl.begin(), wl.end());
            word_add(out, rl, -(cl * cr));
        }
    return out;
}

WordMap expand_to_words(const LieElement& e) {
    WordMap out;
    for (const auto& [m, c] : e)
        for (const auto& [w, cw] : expand_word(m)) word_add(out, w, c * cw);
    return out;
}

namespace {

LieMono standard_bracketing(const std::vector<Tag>& w) {
    if (w.size() == 1) return LieMono::leaf(w[0]);
    // Longest proper Lyndon suffix of a distinct-letter word starts at the
    // minimum of the tail.
    size_t cut = 1;
    for (size_t i = 2; i < w.size(); ++i)
        if (w[i] < w[cut]) cut = i;
    std::vector<Tag> u(w.begin(), w.begin() + cut), v(w.begin() + cut, w.end());
    return LieMono::node(standard_bracketing(u), standard_bracketing(v));
}

} // namespace

std::vector<LieMono> lyndon_basis(std::vector<Tag> tags) {
    std::sort(tags.begin(), tags.end());
    if (std::adjacent_find(tags.begin(), tags.end()) != tags.end())
        throw std::invalid_argument("lyndon_basis: repeated tag");
    if (tags.empty()) return {};
    // Distinct letters: a word is Lyndon iff it starts with the minimum.
    std::vector<LieMono> out;
    std::vector<Tag> rest(tags.begin() + 1, tags.end());
    std::sort(rest.begin(), rest.end());
    do {
        std::vector<Tag> w;
        w.push_back(tags[0]);
        w.insert(w.end(), rest.begin(), rest.end());
        out.push_back(standard_bracketing(w));
    } while (std::next_permutation(rest.begin(), rest.end()));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct LyndonTable {
    std::vector<LieMono> basis;           // on tags 1..N
    std::vector<AssocWord> words;         // all N! words, sorted
    std::map<AssocWord, int> word_index;
    SparseMatrix expansion;               // words x basis
};

const LyndonTable& lyndon_table(int N) {
    static std::map<int, LyndonTable> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    LyndonTable t;
    std::vector<Tag> tags(N);
    for (int i = 0; i < N; ++i) tags[i] = i + 1;
    t.basis = lyndon_basis(tags);
    std::vector<Tag> perm = tags;
    do {
        t.words.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (size_t i = 0; i < t.words.size(); ++i) t.word_index[t.words[i]] = static_cast<int>(i);
    t.expansion = SparseMatrix(static_cast<int>(t.words.size()), static_cast<int>(t.basis.size()));
    for (size_t j = 0; j < t.basis.size(); ++j)
        for (const auto& [w, c] : expand_word(t.basis[j]))
            t.expansion.set(t.word_index.at(w), static_cast<int>(j), c);
    return cache.emplace(N, std::move(t)).first->second;
}

} // namespace

LieElement lyndon_normalize(const LieMono& m) {
    std::vector<Tag> tags = m.tags();
    std::vector<Tag> sorted = tags;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("lyndon_normalize: repeated leaf tag");
    const int N = static_cast<int>(tags.size());

    // Relabel to 1..N, solve against the cached expansion matrix, relabel back.
    std::map<Tag, Tag> to_local, from_local;
    for (int i = 0; i < N; ++i) {
        to_local[sorted[i]] = i + 1;
        from_local[i + 1] = sorted[i];
    }
    LieMono local = m;
    for (int& v : local.code)
        if (v > 0) v = to_local[v];

    const LyndonTable& t = lyndon_table(N);
    std::vector<Rat> rhs(t.words.size(), Rat(0));
    for (const auto& [w, c] : expand_word(local)) rhs[t.word_index.at(w)] = c;
    auto x = solve(t.expansion, rhs);
    if (!x) throw std::logic_error("lyndon_normalize: expansion not in Lie span");

    LieElement out;
    for (size_t j = 0; j < t.basis.size(); ++j) {
        if ((*x)[j].is_zero()) continue;
        LieMono b = t.basis[j];
        for (int& v : b.code)
            if (v > 0) v = from_local[v];
        out.emplace(b, (*x)[j]);
    }
    return out;
}

LieElement lyndon_normalize_element(const LieElement& raw) {
    LieElement out;
    for (const auto& [m, c] : raw)
        for (const auto& [b, cb] : lyndon_normalize(m)) lie_add(out, b, c * cb);
    return out;
}

LieElement lie_bracket(const LieElement& a, const LieElement& b) {
    LieElement out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            for (Tag t : ma.tags())
                if (mb.contains_tag(t))
                    throw std::invalid_argument("lie_bracket: overlapping tags");
            for (const auto& [m, c] : lyndon_normalize(LieMono::node(ma, mb)))
                lie_add(out, m, ca * cb * c);
        }
    return out;
}

WordMap dynkin_project(const AssocWord& w) {
    if (w.empty()) return {};
    LieMono m = LieMono::leaf(w[0]);
    for (size_t i = 1; i < w.size(); ++i) m = LieMono::node(m, LieMono::leaf(w[i]));
    WordMap e = expand_word(m);
    WordMap out;
    Rat f(1, static_cast<long>(w.size()));
    for (const auto& [ww, c] : e) word_add(out, ww, f * c);
    return out;
}

} // namespace uqa

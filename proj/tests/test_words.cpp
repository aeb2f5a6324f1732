#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "testutil.hpp"
#include "uqa/linalg.hpp"
#include "uqa/words.hpp"

#include <map>

using namespace uqa;
using uqa::testutil::Rng;

namespace {

LieMono L(Tag t) { return LieMono::leaf(t); }
LieMono B(const LieMono& a, const LieMono& b) { return LieMono::node(a, b); }

bool word_maps_equal(const WordMap& a, const WordMap& b) { return a == b; }

LieElement random_lie(Rng& rng, const std::vector<Tag>& tags, int nterms) {
    auto basis = lyndon_basis(tags);
    LieElement e;
    for (int k = 0; k < nterms; ++k)
        lie_add(e, basis[rng.range(0, static_cast<int>(basis.size()) - 1)], rng.coeff());
    return e;
}

} // namespace

TEST_CASE("expand single letters and brackets") {
    CHECK(word_maps_equal(expand_word(L(1)), WordMap{{{1}, Rat(1)}}));
    CHECK(word_maps_equal(expand_word(B(L(1), L(2))),
                          WordMap{{{1, 2}, Rat(1)}, {{2, 1}, Rat(-1)}}));
}

TEST_CASE("expand nested bracket matches recursive commutator") {
    // [[x1,x2],x3] expands to the 4-term signed sum
    WordMap got = expand_word(B(B(L(1), L(2)), L(3)));
    WordMap want;
    word_add(want, {1, 2, 3}, Rat(1));
    word_add(want, {2, 1, 3}, Rat(-1));
    word_add(want, {3, 1, 2}, Rat(-1));
    word_add(want, {3, 2, 1}, Rat(1));
    CHECK(word_maps_equal(got, want));
}

TEST_CASE("lyndon normalization basics") {
    auto e = lyndon_normalize(B(L(1), L(2)));
    REQUIRE(e.size() == 1);
    CHECK(e.begin()->first == B(L(1), L(2)));
    CHECK(e.begin()->second == Rat(1));

    auto f = lyndon_normalize(B(L(2), L(1)));
    REQUIRE(f.size() == 1);
    CHECK(f.begin()->first == B(L(1), L(2)));
    CHECK(f.begin()->second == Rat(-1));

    CHECK_THROWS_AS((void)lyndon_normalize(B(L(1), L(1))), std::invalid_argument);
}

TEST_CASE("lyndon normalization preserves the word expansion") {
    // [[x1,x3],x2] equals its normal form in the free Lie algebra
    LieMono m = B(B(L(1), L(3)), L(2));
    auto e = lyndon_normalize(m);
    CHECK(word_maps_equal(expand_word(m), expand_to_words(e)));
}

TEST_CASE("lyndon normalization idempotent") {
    Rng rng(7);
    for (int it = 0; it < 8; ++it) {
        auto e = random_lie(rng, {1, 2, 3, 4}, 3);
        CHECK(lyndon_normalize_element(e) == e);
    }
}

TEST_CASE("bracket antisymmetry and jacobi") {
    Rng rng(31);
    for (int it = 0; it < 6; ++it) {
        auto a = random_lie(rng, {1, 2}, 2);
        auto b = random_lie(rng, {3, 4}, 2);
        auto c = random_lie(rng, {5, 6}, 2);

        LieElement ab = lie_bracket(a, b), ba = lie_bracket(b, a);
        LieElement sum = ab;
        for (const auto& [m, v] : ba) lie_add(sum, m, v);
        CHECK(sum.empty());

        // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
        LieElement j;
        for (const auto& [m, v] : lie_bracket(lie_bracket(a, b), c)) lie_add(j, m, v);
        for (const auto& [m, v] : lie_bracket(lie_bracket(b, c), a)) lie_add(j, m, v);
        for (const auto& [m, v] : lie_bracket(lie_bracket(c, a), b)) lie_add(j, m, v);
        CHECK(j.empty());
    }
    CHECK_THROWS_AS((void)lie_bracket(LieElement{{L(1), Rat(1)}}, LieElement{{L(1), Rat(1)}}),
                    std::invalid_argument);
}

TEST_CASE("multilinear dimension is (N-1)!") {
    int fact = 1;
    for (int N = 1; N <= 5; ++N) {
        if (N > 1) fact *= (N - 1);
        std::vector<Tag> tags;
        for (int i = 1; i <= N; ++i) tags.push_back(i);
        CHECK(static_cast<int>(lyndon_basis(tags).size()) == fact);
    }
}

TEST_CASE("expansion injective on lyndon monomials") {
    for (int N = 2; N <= 5; ++N) {
        std::vector<Tag> tags;
        for (int i = 1; i <= N; ++i) tags.push_back(i);
        auto basis = lyndon_basis(tags);
        std::map<AssocWord, int> widx;
        std::vector<WordMap> cols;
        for (const auto& m : basis) {
            cols.push_back(expand_word(m));
            for (const auto& [w, c] : cols.back()) widx.emplace(w, 0);
        }
        int k = 0;
        for (auto& [w, i] : widx) i = k++;
        SparseMatrix mat(k, static_cast<int>(basis.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (const auto& [w, c] : cols[j]) mat.set(widx[w], static_cast<int>(j), c);
        CHECK(rank(mat) == static_cast<int>(basis.size()));
    }
}

TEST_CASE("dynkin projector fixes lie expansions") {
    Rng rng(55);
    for (int it = 0; it < 6; ++it) {
        auto e = random_lie(rng, {1, 2, 3}, 2);
        WordMap w = expand_to_words(e);
        WordMap projected;
        for (const auto& [ww, c] : w)
            for (const auto& [pw, pc] : dynkin_project(ww)) word_add(projected, pw, c * pc);
        CHECK(word_maps_equal(projected, w));
    }
    // kills the symmetric complement
    WordMap sym;
    word_add(sym, {1, 2}, Rat(1));
    word_add(sym, {2, 1}, Rat(1));
    WordMap projected;
    for (const auto& [ww, c] : sym)
        for (const auto& [pw, pc] : dynkin_project(ww)) word_add(projected, pw, c * pc);
    CHECK(projected.empty());
}

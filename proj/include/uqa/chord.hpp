#pragma once

#include "uqa/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace uqa {

// Generator t_{ij}, 1 <= i < j <= n, packed so that ids sort by (j, i):
// block-j letters are contiguous and ascending. Normal-form words have
// nondecreasing blocks; the word inside each block is free.
struct ChordGen {
    static int pack(int i, int j);      // requires i < j
    static std::pair<int, int> unpack(int id);
    static int block(int id) { return unpack(id).second; }
};

using ChordWord = std::vector<int>; // generator ids

// Element of T_n: map from normal-form words to coefficients.
struct ChordElement {
    int n = 0;
    std::map<ChordWord, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    int min_degree() const;
};

ChordElement chord_zero(int n);
ChordElement chord_one(int n);
ChordElement chord_gen(int n, int i, int j); // t_ij (indices in either order)

void chord_add(ChordElement& acc, const ChordElement& e, const Rat& c = Rat(1));
ChordElement chord_scale(const ChordElement& a, const Rat& c);
ChordElement chord_sub(const ChordElement& a, const ChordElement& b);

// Rewrites an arbitrary generator word into normal form.
ChordElement chord_normalize_word(int n, const ChordWord& w, const Rat& coeff);

ChordElement chord_product(const ChordElement& a, const ChordElement& b);
ChordElement chord_commutator(const ChordElement& a, const ChordElement& b);

// Coproduct-insertion: algebra morphism T_n -> T_m with
// t_ij -> sum over alpha in I_i, beta in I_j of t_{alpha beta}.
// Blocks must be disjoint subsets of {1..m}.
ChordElement chord_insert(const ChordElement& a, const std::vector<std::vector<int>>& blocks, int m);

// Index action t_ij -> t_{sigma(i) sigma(j)}; sigma is 1-based, sigma[i-1] = image of i.
ChordElement chord_permute(const ChordElement& a, const std::vector<int>& sigma);

// Strand antisymmetrization (1/n!) sum over sigma of sgn(sigma) a^sigma.
ChordElement chord_alt(const ChordElement& a);

// Homogeneous component of given degree (letter count).
ChordElement chord_component(const ChordElement& a, int deg);

// Enumeration of normal-form words of fixed degree (the basis of (T_n)_deg).
std::vector<ChordWord> chord_basis(int n, int deg);

// Degree-truncated series in the completion of T_n; comp[k] homogeneous of degree k.
struct ChordSeries {
    int n = 0;
    int order = 0;
    std::vector<ChordElement> comp;

    static ChordSeries one(int n, int order);
    static ChordSeries from_element(const ChordElement& e, int order);
    ChordElement collapse() const; // sum of components as a single element
};

ChordSeries series_add(const ChordSeries& a, const ChordSeries& b);
ChordSeries series_scale(const ChordSeries& a, const Rat& c);
ChordSeries series_mul(const ChordSeries& a, const ChordSeries& b);
ChordSeries series_inverse(const ChordSeries& s); // constant term must be 1
ChordSeries series_exp(const ChordSeries& s);     // constant term must be 0
bool series_is_zero(const ChordSeries& s);

// Tensor-square elements, for the group-like check.
using ChordPair = std::map<std::pair<ChordWord, ChordWord>, Rat>;
ChordPair chord_coproduct(const ChordElement& a); // generators primitive

std::string chord_word_str(const ChordWord& w);

} // namespace uqa

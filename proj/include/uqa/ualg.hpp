#pragma once

#include "uqa/chord.hpp"
#include "uqa/rational.hpp"
#include "uqa/words.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uqa {

// Canonical basis element of the universal algebra on n tensor slots:
// a pair of slotted multilinear words over tags 1..N, modulo simultaneous
// relabeling. Canonical labeling numbers tags by first appearance reading
// the x-side slots left to right, so the x-side concatenation is always
// (1,...,N) and only the per-slot lengths plus the y-side arrangement are
// stored.
struct Diagram {
    std::vector<int> xlen, ylen; // per-slot word lengths
    std::vector<Tag> ytags;      // concatenated y-side words

    int slots() const { return static_cast<int>(xlen.size()); }
    int degree() const;

    std::vector<AssocWord> xwords() const;
    std::vector<AssocWord> ywords() const;

    std::string str() const;

    auto operator<=>(const Diagram&) const = default;
};

// Canonicalizes raw slotted words (arbitrary distinct tags, each appearing
// once per side) into a Diagram.
Diagram make_diagram(const std::vector<AssocWord>& xw, const std::vector<AssocWord>& yw);

struct UElement {
    int n = 0;
    std::map<Diagram, Rat> terms;

    bool is_zero() const { return terms.empty(); }
};

UElement u_zero(int n);
UElement u_one(int n);
void u_add(UElement& acc, const UElement& e, const Rat& c = Rat(1));
void u_add_term(UElement& acc, const Diagram& d, const Rat& c);
UElement u_scale(const UElement& a, const Rat& c);
UElement u_sub(const UElement& a, const UElement& b);
UElement u_component(const UElement& a, int deg);

// r in U_2, its slot swap, t = r + r^{2,1}, m(r) in U_1, t^{i,j} in U_n.
UElement make_r();
UElement make_r21();
UElement make_t();
UElement make_mr();
UElement make_t_ij(int n, int i, int j);

// Normal-ordering product. Slotwise concatenation followed by rewriting of
// ill-ordered (y-letter, x-letter) pairs; the mixed bracket of two letters
// grafts the partner leaf of one tag onto the other side. Runs a one-time
// convention check (worked product identity and the classical Yang-Baxter
// rearrangement) on first use.
UElement u_product(const UElement& a, const UElement& b);

// Insertion-coproduct: blocks are disjoint subsets of {1..m}, one per source
// slot; letters of slot s distribute over the slots of blocks[s] in all
// order-preserving ways, x- and y-sides independently.
UElement u_insert(const UElement& a, const std::vector<std::vector<int>>& blocks, int m);

// Keeps diagrams whose given slot (1-based) is empty on both sides, dropping it.
UElement partial_counit(const UElement& a, int slot);

// Slot permutation; sigma is 1-based, sigma[s-1] = image of slot s.
UElement u_slot_permute(const UElement& a, const std::vector<int>& sigma);

// (1/n!) sum of signed slot permutations.
UElement u_alt(const UElement& a);

// Partial antisymmetrization over a subset of slots (1-based), 1/k! included.
UElement u_alt_slots(const UElement& a, const std::vector<int>& slots);

UElement u_commutator(const UElement& a, const UElement& b);

// Per-slot (a,b)-degrees of a diagram: a = x-side length, b = y-side length.
std::pair<std::vector<int>, std::vector<int>> ab_degrees(const Diagram& d);

// Slot pattern: per-slot inclusive bounds on the a/b-degrees (-1 = unbounded).
struct SlotPattern {
    struct Range {
        int amin = 0, amax = -1, bmin = 0, bmax = -1;
    };
    std::vector<Range> slot;

    bool matches(const Diagram& d) const;
};

// Sum of terms whose diagrams match the pattern.
UElement project_component(const UElement& a, const SlotPattern& p);

// Canonical basis of (U_n)_N, sorted.
std::vector<Diagram> u_basis(int n, int N);

// Degree-truncated series in the completion of U_n.
struct USeries {
    int n = 0;
    int order = 0;
    std::vector<UElement> comp;

    static USeries one(int n, int order);
    static USeries from_element(const UElement& e, int order);
    USeries truncated(int order) const;
};

USeries useries_add(const USeries& a, const USeries& b);
USeries useries_scale(const USeries& a, const Rat& c);
USeries useries_mul(const USeries& a, const USeries& b);
USeries useries_inverse(const USeries& s); // constant term must be 1
USeries useries_exp(const USeries& s);     // constant term must be 0
bool useries_is_zero(const USeries& s);
USeries useries_insert(const USeries& s, const std::vector<std::vector<int>>& blocks, int m);
USeries useries_slot_permute(const USeries& s, const std::vector<int>& sigma);

// Algebra morphism of the chord algebra into the universal algebra,
// t_ij -> t^{i,j}. Products of generators are cached per strand count.
UElement mu_embed(const ChordElement& c);
USeries mu_embed_series(const ChordSeries& s, int order);

} // namespace uqa

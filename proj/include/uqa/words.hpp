#pragma once

#include "uqa/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace uqa {

using Tag = int; // 1-based letter labels
using AssocWord = std::vector<Tag>;

// Free-Lie monomial in prefix encoding: -1 opens a bracket node, positive
// entries are leaf tags. Multilinear throughout: leaf tags are distinct.
struct LieMono {
    std::vector<int> code;

    static LieMono leaf(Tag t) { return LieMono{{t}}; }
    static LieMono node(const LieMono& l, const LieMono& r);

    bool is_leaf() const { return code.size() == 1; }
    Tag leaf_tag() const { return code[0]; }
    std::pair<LieMono, LieMono> children() const;
    int size() const; // number of leaves
    void collect_tags(std::vector<Tag>& out) const;
    std::vector<Tag> tags() const;
    bool contains_tag(Tag t) const;
    // Replaces the unique leaf `t` by `m` (no-op if absent); returns true on hit.
    bool graft(Tag t, const LieMono& m);

    std::string str() const;

    auto operator<=>(const LieMono&) const = default;
};

using LieElement = std::map<LieMono, Rat>; // keys in Lyndon normal form, no zero coefficients
using WordMap = std::map<AssocWord, Rat>;

void word_add(WordMap& acc, const AssocWord& w, const Rat& c);
void lie_add(LieElement& acc, const LieMono& m, const Rat& c);

// Image under bracket -> commutator of concatenations.
WordMap expand_word(const LieMono& m);
WordMap expand_to_words(const LieElement& e);

// All multilinear Lyndon monomials (standard bracketing) on a set of distinct tags.
std::vector<LieMono> lyndon_basis(std::vector<Tag> tags);

// Rewrites a monomial into the Lyndon basis. Throws on repeated leaf tags.
LieElement lyndon_normalize(const LieMono& m);
LieElement lyndon_normalize_element(const LieElement& raw);

// Bilinear bracket; tag sets must be disjoint.
LieElement lie_bracket(const LieElement& a, const LieElement& b);

// Projection of a multilinear word onto the free Lie algebra:
// w = l1...lk -> (1/k)[...[[l1,l2],l3],...,lk], expanded back to words.
// Fixes expansions of Lie monomials, kills the complement.
WordMap dynkin_project(const AssocWord& w);

} // namespace uqa

#pragma once

#include "uqa/chord.hpp"

#include <optional>
#include <string>
#include <vector>

namespace uqa {

// Invertible chord series on three strands with constant term 1 solving the
// duality, pentagon and hexagon relations up to its truncation order.
struct Associator {
    int order = 0;
    ChordSeries phi;
    Rat phi2_coefficient; // coefficient c in phi_2 = c [t12,t23]
};

struct AssociatorReport {
    int order = 0;
    std::vector<int> duality_bad;  // degrees with nonzero residual
    std::vector<int> pentagon_bad;
    std::vector<int> hexagon_bad;
    std::optional<bool> grouplike; // set when the optional check ran

    bool ok() const {
        return duality_bad.empty() && pentagon_bad.empty() && hexagon_bad.empty() &&
               (!grouplike.has_value() || *grouplike);
    }
};

ChordSeries chord_series_insert(const ChordSeries& s, const std::vector<std::vector<int>>& blocks,
                                int m);
ChordSeries chord_series_permute(const ChordSeries& s, const std::vector<int>& sigma);

// Per-degree residuals of the three relations (pentagon evaluated on four
// strands), plus the optional group-likeness check.
AssociatorReport verify_associator(const ChordSeries& phi, int order,
                                   bool check_grouplike = false);

// Degree-by-degree linear solve; free variables zeroed in the monomial-basis
// order. With impose_alt_phi2 the degree-2 strand antisymmetrization is
// pinned to (1/8)[t12,t23]; an inconsistent system throws.
Associator solve_associator(int order, bool impose_alt_phi2 = false);

struct AssociatorError : std::runtime_error {
    int degree;
    AssociatorError(int deg, const std::string& what) : std::runtime_error(what), degree(deg) {}
};

} // namespace uqa

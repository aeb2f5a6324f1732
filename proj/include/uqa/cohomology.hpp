#pragma once

#include "uqa/linalg.hpp"
#include "uqa/ualg.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace uqa {

// Raised when a cohomology-side linear solve is inconsistent, i.e. the input
// class is a genuine obstruction rather than an implementation fault.
struct CohomologyObstruction : std::runtime_error {
    int degree;
    explicit CohomologyObstruction(int deg, const std::string& what)
        : std::runtime_error(what), degree(deg) {}
};

// Alternating sum of insertion-coproducts, U_n -> U_{n+1}.
UElement cohoch_d(const UElement& a);

// Cobracket insertion at slot position k (1-based): U_n -> U_{n+1}.
UElement partial_del(int k, const UElement& a);

// Wedge-complex differential: full antisymmetrization of the position-1
// cobracket insertion.
UElement wedge_partial(const UElement& x);

// Six-commutator bracket U_2 x U_2 -> U_3.
UElement big_bracket(const UElement& x, const UElement& y);

// Typed wedge element: antisymmetrized a-slots 1..p and b-slots p+1..p+q.
struct WedgeElement {
    int p = 0, q = 0;
    UElement element;
};

UElement wedge_embed(const WedgeElement& w);

// Projects onto the (p,q) wedge subspace: kills diagrams off the slot-side
// pattern, projects each slot word onto its Lie part, antisymmetrizes the
// two slot groups.
WedgeElement alt_project(const UElement& a, int p, int q);

// Projector onto the full k-th wedge subspace (all slot-side types, full Alt).
UElement wedge_project_total(const UElement& a, int k);

// Column-reduced basis of the degree-N part of the k-th wedge space,
// realized inside U_k. Cached; deterministic.
const std::vector<UElement>& wedge_basis(int k, int N);

// Coordinate matrix of a list of elements; rows indexed by the sorted set of
// occurring diagrams (returned through rowindex).
SparseMatrix columns_matrix(const std::vector<UElement>& cols, std::map<Diagram, int>& rowindex);
std::vector<Rat> coords_in(const std::map<Diagram, int>& rowindex, const UElement& e, int rows);

// Splits a degree-homogeneous cocycle Z in U_3 as Z = d(K) + wedge part.
// Throws std::invalid_argument if Z is not a cocycle (residual reported),
// CohomologyObstruction if the split fails.
std::pair<UElement, UElement> split_cocycle(const UElement& Z);

// Solves mu = -(1/6) [[r, lambda]] for lambda in the wedge-2 space of degree
// N-1. Asserts the alternated double-cobracket of mu vanishes. Throws
// CohomologyObstruction when the class of mu is not in the image.
UElement solve_lambda(const UElement& mu);

struct CohomReport {
    std::string complex; // "wedge" or "cohoch"
    int spot = 0;        // cohomological position
    int degree = 0;      // total degree of the spot
    int dim_space = 0;
    int rank_out = 0;
    int rank_in = 0;
    int dim_h = 0;
    std::vector<std::string> notes;
};

// H^k of the wedge complex at total degree N (incoming differential from
// degree N-1, outgoing to degree N+1). fine_blocks switches to the bigraded
// slot-type assembly; both paths must agree.
CohomReport wedge_report(int k, int N, bool fine_blocks = false);

// H^n of the insertion-coproduct complex at fixed total degree N.
CohomReport cohoch_report(int n, int N);

} // namespace uqa

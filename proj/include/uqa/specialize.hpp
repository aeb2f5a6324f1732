#pragma once

#include "uqa/twist.hpp"
#include "uqa/ualg.hpp"

#include <map>
#include <string>
#include <vector>

namespace uqa {

// Finite-dimensional Lie bialgebra by structure constants over Q:
// [a_i, a_j] = sum_k f(i,j,k) a_k,  delta(a_k) = sum_{i,j} g(k,i,j) a_i (x) a_j
// with g antisymmetric in (i,j). Indices are 1-based.
struct LieBialgebra {
    int dim = 0;
    std::vector<Rat> fc, gc; // dense dim^3 tables

    explicit LieBialgebra(int d) : dim(d), fc(d * d * d, Rat(0)), gc(d * d * d, Rat(0)) {}
    LieBialgebra() = default;

    Rat& f(int i, int j, int k) { return fc[((i - 1) * dim + (j - 1)) * dim + (k - 1)]; }
    const Rat& f(int i, int j, int k) const { return fc[((i - 1) * dim + (j - 1)) * dim + (k - 1)]; }
    Rat& g(int k, int i, int j) { return gc[((k - 1) * dim + (i - 1)) * dim + (j - 1)]; }
    const Rat& g(int k, int i, int j) const { return gc[((k - 1) * dim + (i - 1)) * dim + (j - 1)]; }

    // set [a_i,a_j] += c a_k together with the antisymmetric partner
    void add_bracket(int i, int j, int k, const Rat& c);
    // set delta(a_k) += c (a_i ^ a_j) = c (a_i x a_j - a_j x a_i)
    void add_cobracket(int k, int i, int j, const Rat& c);
};

LieBialgebra make_abelian_bialgebra(int dim);
// basis (H, E): [H,E] = 2E, delta(H) = 0, delta(E) = H ^ E
LieBialgebra make_borel2_bialgebra();

struct BialgebraReport {
    bool antisym_bracket = false, antisym_cobracket = false;
    bool jacobi = false, cojacobi = false, cocycle = false;
    bool ok() const { return antisym_bracket && antisym_cobracket && jacobi && cojacobi && cocycle; }
};

BialgebraReport validate_bialgebra(const LieBialgebra& b);

// The double: generators a_1..a_d, b^1..b^d encoded 0..d-1, d..2d-1; full
// bracket table. The mixed-bracket sign convention is selected at build time
// by requiring the classical Yang-Baxter equation for sum_i a_i (x) b^i and
// the specialization homomorphism; failure to find one throws.
struct DoubleAlgebra {
    LieBialgebra base;
    int d = 0;
    std::vector<std::map<int, Rat>> table; // [(u * 2d + v)] -> bracket coefficients
    int sign_fb = 0, sign_ga = 0;          // the selected convention

    const std::map<int, Rat>& bracket(int u, int v) const { return table[u * 2 * d + v]; }
};

DoubleAlgebra build_double(const LieBialgebra& b);

// PBW data: sorted generator index words; elements are maps to coefficients.
using PbwMono = std::vector<int>;
using PbwElem = std::map<PbwMono, Rat>;

PbwElem pbw_reduce(const DoubleAlgebra& D, const std::vector<int>& word, const Rat& coeff);
PbwElem pbw_mul(const DoubleAlgebra& D, const PbwElem& x, const PbwElem& y);
void pbw_add(PbwElem& acc, const PbwElem& e, const Rat& c = Rat(1));

// n-fold tensor power of the enveloping algebra with a formal-parameter
// grading; comp[k] holds the order-k coefficient.
using TensorMono = std::vector<PbwMono>;
using TensorElem = std::map<TensorMono, Rat>;

struct HSeries {
    int n = 0;
    int horder = 0;
    std::vector<TensorElem> comp;

    static HSeries zero(const DoubleAlgebra& D, int n, int horder);
    static HSeries one(const DoubleAlgebra& D, int n, int horder);
};

void h_add(HSeries& acc, const HSeries& e, const Rat& c = Rat(1));
HSeries h_scale(const HSeries& a, const Rat& c);
HSeries h_mul(const DoubleAlgebra& D, const HSeries& a, const HSeries& b);
HSeries h_inverse(const DoubleAlgebra& D, const HSeries& a); // constant term 1
bool h_is_zero(const HSeries& a);

// letter-distributing insertion (the undeformed coproduct and friends)
HSeries h_insert(const HSeries& a, const std::vector<std::vector<int>>& blocks, int m);

// degree-N diagrams map to the order-N sum over index assignments
HSeries specialize_element(const UElement& a, const DoubleAlgebra& D, int horder);
HSeries specialize_series(const USeries& s, const DoubleAlgebra& D, int horder);

// contraction of the second slot against the dual of a PBW monomial
HSeries ell_map(const DoubleAlgebra& D, const HSeries& R2, const PbwMono& xi);

struct CheckLine {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct QuantizeReport {
    std::vector<CheckLine> lines;
    bool ok() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

// Evaluates the twist on the double and checks, order by order: twisted
// coassociativity, the quantum Yang-Baxter equation, both quasitriangular
// identities, and the second-slot form hypothesis.
QuantizeReport quantize(const LieBialgebra& b, const Twist& tw, int horder);

// Flatness suite: the contraction kills duals of plain a-monomials, the
// composed symmetric-algebra map is triangular-invertible, the transported
// product and coproduct satisfy the Hopf axioms on monomials of degree <=
// degcap, and the linear part of the coproduct returns the input cobracket.
QuantizeReport flatness_check(const LieBialgebra& b, const Twist& tw, int horder, int degcap);

} // namespace uqa

#pragma once

#include "uqa/chord.hpp"
#include "uqa/linalg.hpp"
#include "uqa/ualg.hpp"

#include <cstdint>
#include <vector>

namespace uqa::testutil {

// Small deterministic generator so expected values are reproducible.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
    Rat coeff() { return Rat(range(-3, 3)); }
};

inline UElement random_u(Rng& rng, int n, int deg, int nterms) {
    auto basis = u_basis(n, deg);
    UElement e = u_zero(n);
    for (int k = 0; k < nterms; ++k) {
        const Diagram& d = basis[rng.range(0, static_cast<int>(basis.size()) - 1)];
        u_add_term(e, d, rng.coeff());
    }
    return e;
}

inline ChordElement random_chord(Rng& rng, int n, int deg, int nterms) {
    auto basis = chord_basis(n, deg);
    ChordElement e = chord_zero(n);
    for (int k = 0; k < nterms; ++k) {
        ChordElement m{n, {}};
        m.terms.emplace(basis[rng.range(0, static_cast<int>(basis.size()) - 1)], rng.coeff());
        chord_add(e, m);
    }
    return e;
}

inline SparseMatrix random_matrix(Rng& rng, int rows, int cols, int fill_percent) {
    SparseMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng.range(0, 99) < fill_percent) m.set(r, c, rng.coeff());
    return m;
}

} // namespace uqa::testutil

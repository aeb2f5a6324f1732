#include "uqa/associator.hpp"

#include "uqa/linalg.hpp"

#include <map>
#include <sstream>

namespace uqa {

ChordSeries chord_series_insert(const ChordSeries& s, const std::vector<std::vector<int>>& blocks,
                                int m) {
    ChordSeries out{m, s.order, {}};
    out.comp.assign(s.order + 1, chord_zero(m));
    for (int k = 0; k <= s.order; ++k) out.comp[k] = chord_insert(s.comp[k], blocks, m);
    return out;
}

ChordSeries chord_series_permute(const ChordSeries& s, const std::vector<int>& sigma) {
    ChordSeries out = s;
    for (auto& e : out.comp) e = chord_permute(e, sigma);
    return out;
}

namespace {

ChordSeries tseries(int n, int i, int j, const Rat& c, int order) {
    ChordSeries s{n, order, {}};
    s.comp.assign(order + 1, chord_zero(n));
    if (order >= 1) chord_add(s.comp[1], chord_gen(n, i, j), c);
    return s;
}

// phi^{3,2,1} phi - 1
ChordSeries duality_residual(const ChordSeries& phi) {
    ChordSeries res = series_mul(chord_series_permute(phi, {3, 2, 1}), phi);
    chord_add(res.comp[0], chord_one(3), Rat(-1));
    return res;
}

// phi^{1,2,34} phi^{12,3,4} - phi^{2,3,4} phi^{1,23,4} phi^{1,2,3}
ChordSeries pentagon_residual(const ChordSeries& phi) {
    ChordSeries lhs = series_mul(chord_series_insert(phi, {{1}, {2}, {3, 4}}, 4),
                                 chord_series_insert(phi, {{1, 2}, {3}, {4}}, 4));
    ChordSeries rhs =
        series_mul(chord_series_insert(phi, {{2}, {3}, {4}}, 4),
                   series_mul(chord_series_insert(phi, {{1}, {2, 3}, {4}}, 4),
                              chord_series_insert(phi, {{1}, {2}, {3}}, 4)));
    ChordSeries res = lhs;
    for (int k = 0; k <= res.order; ++k) chord_add(res.comp[k], rhs.comp[k], Rat(-1));
    return res;
}

// e^{t23/2} phi e^{t12/2} phi^{3,1,2} e^{t13/2} phi^{2,3,1} - e^{(t12+t13+t23)/2}
ChordSeries hexagon_residual(const ChordSeries& phi) {
    const int order = phi.order;
    ChordSeries e23 = series_exp(tseries(3, 2, 3, Rat(1, 2), order));
    ChordSeries e12 = series_exp(tseries(3, 1, 2, Rat(1, 2), order));
    ChordSeries e13 = series_exp(tseries(3, 1, 3, Rat(1, 2), order));
    ChordSeries lhs = series_mul(
        e23,
        series_mul(phi,
                   series_mul(e12, series_mul(chord_series_permute(phi, {3, 1, 2}),
                                              series_mul(e13, chord_series_permute(phi, {2, 3, 1}))))));
    ChordSeries half{3, order, {}};
    half.comp.assign(order + 1, chord_zero(3));
    if (order >= 1) {
        chord_add(half.comp[1], chord_gen(3, 1, 2), Rat(1, 2));
        chord_add(half.comp[1], chord_gen(3, 1, 3), Rat(1, 2));
        chord_add(half.comp[1], chord_gen(3, 2, 3), Rat(1, 2));
    }
    ChordSeries rhs = series_exp(half);
    ChordSeries res = lhs;
    for (int k = 0; k <= res.order; ++k) chord_add(res.comp[k], rhs.comp[k], Rat(-1));
    return res;
}

} // namespace

AssociatorReport verify_associator(const ChordSeries& phi, int order, bool check_grouplike) {
    if (phi.n != 3) throw std::invalid_argument("verify_associator: need 3 strands");
    ChordSeries p{3, order, {}};
    p.comp.assign(order + 1, chord_zero(3));
    for (int k = 0; k <= std::min(order, phi.order); ++k) p.comp[k] = phi.comp[k];

    AssociatorReport rep;
    rep.order = order;
    ChordSeries rd = duality_residual(p);
    ChordSeries rp = pentagon_residual(p);
    ChordSeries rh = hexagon_residual(p);
    for (int k = 0; k <= order; ++k) {
        if (!rd.comp[k].is_zero()) rep.duality_bad.push_back(k);
        if (!rp.comp[k].is_zero()) rep.pentagon_bad.push_back(k);
        if (!rh.comp[k].is_zero()) rep.hexagon_bad.push_back(k);
    }
    if (check_grouplike) {
        bool ok = true;
        for (int k = 0; k <= order && ok; ++k) {
            ChordPair want;
            for (int i = 0; i <= k; ++i)
                for (const auto& [wl, cl] : p.comp[i].terms)
                    for (const auto& [wr, cr] : p.comp[k - i].terms) {
                        auto key = std::make_pair(wl, wr);
                        auto it = want.find(key);
                        if (it == want.end()) want.emplace(key, cl * cr);
                        else {
                            it->second += cl * cr;
                            if (it->second.is_zero()) want.erase(it);
                        }
                    }
            ok = (chord_coproduct(p.comp[k]) == want);
        }
        rep.grouplike = ok;
    }
    return rep;
}

Associator solve_associator(int order, bool impose_alt_phi2) {
    if (order < 0) throw std::invalid_argument("solve_associator: bad order");
    ChordSeries phi = ChordSeries::one(3, order);
    Associator out;
    out.order = order;
    out.phi2_coefficient = Rat(0);

    for (int n = 2; n <= order; ++n) {
        // base residuals with the degree-n component left zero
        ChordSeries work{3, n, {}};
        work.comp.assign(n + 1, chord_zero(3));
        for (int k = 0; k < n; ++k) work.comp[k] = phi.comp[k];
        ChordElement r0d = duality_residual(work).comp[n];
        ChordElement r0p = pentagon_residual(work).comp[n];
        ChordElement r0h = hexagon_residual(work).comp[n];

        // the degree-n part of each relation is affine in the unknown with
        // unit cofactors, so the linear parts are plain insertion sums
        auto basis = chord_basis(3, n);
        std::map<ChordWord, int> idx3, idx4;
        auto touch3 = [&idx3](const ChordElement& e) {
            for (const auto& [w, c] : e.terms) idx3.emplace(w, 0);
        };
        auto touch4 = [&idx4](const ChordElement& e) {
            for (const auto& [w, c] : e.terms) idx4.emplace(w, 0);
        };
        std::vector<ChordElement> cold, colp, colh, cola;
        ChordElement alt_rhs = chord_zero(3);
        // At degree 2 the affine solution set is a line (the twisting
        // freedom); the classical normalization phi_2 = Alt(phi_2) picks the
        // commutator multiple. The flag additionally pins the scalar.
        const bool with_alt = n == 2;
        for (const auto& w : basis) {
            ChordElement x{3, {}};
            x.terms.emplace(w, Rat(1));
            ChordElement cd = chord_permute(x, {3, 2, 1});
            chord_add(cd, x);
            ChordElement cp = chord_insert(x, {{1}, {2}, {3, 4}}, 4);
            chord_add(cp, chord_insert(x, {{1, 2}, {3}, {4}}, 4));
            chord_add(cp, chord_insert(x, {{2}, {3}, {4}}, 4), Rat(-1));
            chord_add(cp, chord_insert(x, {{1}, {2, 3}, {4}}, 4), Rat(-1));
            chord_add(cp, chord_insert(x, {{1}, {2}, {3}}, 4), Rat(-1));
            ChordElement ch = x;
            chord_add(ch, chord_permute(x, {3, 1, 2}));
            chord_add(ch, chord_permute(x, {2, 3, 1}));
            touch3(cd);
            touch4(cp);
            touch3(ch);
            cold.push_back(std::move(cd));
            colp.push_back(std::move(cp));
            colh.push_back(std::move(ch));
            if (with_alt) {
                ChordElement ax = chord_alt(x);
                chord_add(ax, x, Rat(-1)); // Alt(X) - X
                touch3(ax);
                cola.push_back(std::move(ax));
            }
        }
        if (with_alt && impose_alt_phi2) {
            alt_rhs = chord_scale(chord_commutator(chord_gen(3, 1, 2), chord_gen(3, 2, 3)), Rat(1, 8));
            touch3(alt_rhs);
        }
        touch3(r0d);
        touch4(r0p);
        touch3(r0h);
        int n3 = 0, n4 = 0;
        for (auto& [w, i] : idx3) i = n3++;
        for (auto& [w, i] : idx4) i = n4++;

        const int extra = with_alt ? (impose_alt_phi2 ? 2 : 1) : 0;
        const int rows = n3 * (2 + extra) + n4;
        SparseMatrix m(rows, static_cast<int>(basis.size()));
        std::vector<Rat> rhs(rows, Rat(0));
        for (size_t j = 0; j < basis.size(); ++j) {
            const int col = static_cast<int>(j);
            for (const auto& [w, c] : cold[j].terms) m.set(idx3.at(w), col, c);
            for (const auto& [w, c] : colp[j].terms) m.set(n3 + idx4.at(w), col, c);
            for (const auto& [w, c] : colh[j].terms) m.set(n3 + n4 + idx3.at(w), col, c);
            if (with_alt) {
                for (const auto& [w, c] : cola[j].terms) m.set(2 * n3 + n4 + idx3.at(w), col, c);
                if (impose_alt_phi2) {
                    // also pin Alt(X) itself
                    ChordElement ax = cola[j];
                    chord_add(ax, ChordElement{3, {{basis[j], Rat(1)}}});
                    for (const auto& [w, c] : ax.terms) m.set(3 * n3 + n4 + idx3.at(w), col, c);
                }
            }
        }
        for (const auto& [w, c] : r0d.terms) rhs[idx3.at(w)] = -c;
        for (const auto& [w, c] : r0p.terms) rhs[n3 + idx4.at(w)] = -c;
        for (const auto& [w, c] : r0h.terms) rhs[n3 + n4 + idx3.at(w)] = -c;
        if (with_alt && impose_alt_phi2)
            for (const auto& [w, c] : alt_rhs.terms) rhs[3 * n3 + n4 + idx3.at(w)] = c;

        auto x = solve(m, rhs);
        if (!x) {
            std::ostringstream os;
            os << "solve_associator: inconsistent linear system at degree " << n;
            if (with_alt) os << " (with the imposed degree-2 antisymmetrization)";
            throw AssociatorError(n, os.str());
        }
        ChordElement comp = chord_zero(3);
        for (size_t j = 0; j < basis.size(); ++j) {
            if ((*x)[j].is_zero()) continue;
            ChordElement mono{3, {}};
            mono.terms.emplace(basis[j], (*x)[j]);
            chord_add(comp, mono);
        }
        phi.comp[n] = comp;

        if (n == 2) {
            ChordElement com = chord_commutator(chord_gen(3, 1, 2), chord_gen(3, 2, 3));
            bool proportional = comp.is_zero();
            if (!comp.is_zero()) {
                const auto& [w0, c0] = *comp.terms.begin();
                auto it = com.terms.find(w0);
                if (it != com.terms.end()) {
                    Rat c = c0 / it->second;
                    if (chord_sub(comp, chord_scale(com, c)).is_zero()) {
                        out.phi2_coefficient = c;
                        proportional = true;
                    }
                }
            }
            if (!proportional)
                throw AssociatorError(2,
                                      "solve_associator: degree-2 part is not a multiple of [t12,t23]");
        }
    }
    out.phi = phi;
    return out;
}

} // namespace uqa

// Acceptance suite: one line per criterion, exact checks only.
//
// Each criterion prints PASS or FAIL with timing; the binary exits nonzero
// if any line fails. Sub-checks print indented. All tolerances are exact
// (zero residual in the rationals).

#include "testutil.hpp"
#include "uqa/artifact.hpp"
#include "uqa/cohomology.hpp"
#include "uqa/specialize.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>

using namespace uqa;
using uqa::testutil::Rng;

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    std::chrono::steady_clock::time_point start;
    bool ok = true;
    explicit Criterion(const std::string& n) : name(n), start(std::chrono::steady_clock::now()) {}
    void sub(const std::string& what, bool pass, const std::string& detail = "") {
        std::cout << "    " << (pass ? "ok  " : "FAIL") << " " << what
                  << (detail.empty() ? "" : " [" + detail + "]") << "\n";
        ok = ok && pass;
    }
    ~Criterion() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cout << (ok ? "PASS" : "FAIL") << " " << name << "  (" << ms << " ms)\n\n";
        if (!ok) ++failures;
    }
};

UElement rij(int n, int i, int j) {
    std::vector<AssocWord> xw(n), yw(n);
    xw[i - 1] = {1};
    yw[j - 1] = {1};
    UElement e{n, {}};
    e.terms.emplace(make_diagram(xw, yw), Rat(1));
    return e;
}

long binom(int a, int b) {
    long r = 1;
    for (int k = 1; k <= b; ++k) r = r * (a - k + 1) / k;
    return r;
}

void criterion_1() {
    Criterion c("1. worked product example");
    UElement lhs = u_product(make_t_ij(3, 2, 3), make_t_ij(3, 1, 3));
    UElement rhs = u_zero(3);
    u_add(rhs, u_product(rij(3, 2, 3), rij(3, 1, 3)));
    u_add(rhs, u_product(rij(3, 3, 2), rij(3, 1, 3)));
    u_add(rhs, u_product(rij(3, 3, 1), rij(3, 2, 3)));
    u_add(rhs, u_commutator(rij(3, 2, 1), rij(3, 2, 3)));
    u_add(rhs, u_commutator(rij(3, 3, 1), rij(3, 2, 1)));
    u_add(rhs, u_product(rij(3, 3, 2), rij(3, 3, 1)));
    c.sub("six-term expansion matches exactly", u_sub(lhs, rhs).is_zero());
}

void criterion_2() {
    Criterion c("2. chord basis dimensions and embedding rank");
    bool dims = true;
    long p = 2;
    for (int d = 1; d <= 6; ++d) {
        p *= 2;
        dims = dims && static_cast<long>(chord_basis(3, d).size()) == p - 1;
    }
    c.sub("dim of degree-d part of the three-strand algebra is 2^{d+1}-1, d <= 6", dims);

    bool inj = true;
    for (int d = 1; d <= 3; ++d) {
        auto basis = chord_basis(3, d);
        std::vector<UElement> cols;
        for (const auto& w : basis) {
            ChordElement e{3, {}};
            e.terms.emplace(w, Rat(1));
            cols.push_back(mu_embed(e));
        }
        std::map<Diagram, int> ridx;
        SparseMatrix m = columns_matrix(cols, ridx);
        inj = inj && rank(m) == static_cast<int>(basis.size());
    }
    c.sub("embedding injective through degree 3 (rank equals dimension)", inj);
}

void criterion_3() {
    Criterion c("3. universal dimensions against the orbit oracle");
    bool ok = true;
    for (int n = 1; n <= 3 && ok; ++n)
        for (int N = 0; N <= 4 && ok; ++N) {
            long fact = 1;
            for (int k = 2; k <= N; ++k) fact *= k;
            long want = fact * binom(N + n - 1, n - 1) * binom(N + n - 1, n - 1);
            if (static_cast<long>(u_basis(n, N).size()) != want) ok = false;

            // brute-force orbit enumeration of labeled slotted word pairs
            std::set<Diagram> orbits;
            std::vector<std::vector<int>> comps;
            {
                std::vector<int> cur;
                std::function<void(int, int)> rec = [&](int left, int parts) {
                    if (parts == 1) {
                        cur.push_back(left);
                        comps.push_back(cur);
                        cur.pop_back();
                        return;
                    }
                    for (int k = 0; k <= left; ++k) {
                        cur.push_back(k);
                        rec(left - k, parts - 1);
                        cur.pop_back();
                    }
                };
                rec(N, n);
            }
            std::vector<Tag> px(N), py(N);
            for (int i = 0; i < N; ++i) px[i] = i + 1;
            std::sort(px.begin(), px.end());
            do {
                for (int i = 0; i < N; ++i) py[i] = i + 1;
                std::sort(py.begin(), py.end());
                do {
                    for (const auto& xl : comps)
                        for (const auto& yl : comps) {
                            std::vector<AssocWord> xw(n), yw(n);
                            size_t pos = 0;
                            for (int s = 0; s < n; ++s)
                                for (int k = 0; k < xl[s]; ++k) xw[s].push_back(px[pos++]);
                            pos = 0;
                            for (int s = 0; s < n; ++s)
                                for (int k = 0; k < yl[s]; ++k) yw[s].push_back(py[pos++]);
                            orbits.insert(make_diagram(xw, yw));
                        }
                } while (std::next_permutation(py.begin(), py.end()));
            } while (std::next_permutation(px.begin(), px.end()));
            if (static_cast<long>(orbits.size()) != want) ok = false;
        }
    c.sub("closed form matches brute-force orbit counting, n <= 3, N <= 4", ok);
}

void criterion_4() {
    Criterion c("4. wedge-complex cohomology");
    for (int N = 1; N <= 4; ++N) {
        CohomReport h2 = wedge_report(2, N);
        c.sub("second spot trivial at degree " + std::to_string(N), h2.dim_h == 0);
        c.sub("second differential injective at degree " + std::to_string(N),
              h2.rank_out == h2.dim_space);
    }
    for (int N = 3; N <= 4; ++N) {
        CohomReport h3 = wedge_report(3, N);
        c.sub("third spot trivial at degree " + std::to_string(N), h3.dim_h == 0);
    }
    {
        CohomReport h32 = wedge_report(3, 2);
        // Stated expectation: one-dimensional, generated by the class of the
        // commutator of two chord generators. The exact computation gives the
        // identity  mu([t12,t23]) = [[r, r - r21]],  so that class is a
        // coboundary and the spot vanishes; see the notes in the test output.
        c.sub("third spot at degree 2 is one-dimensional",
              h32.dim_h == 1, "computed dimension " + std::to_string(h32.dim_h));
        UElement gen = mu_embed(chord_commutator(chord_gen(3, 1, 2), chord_gen(3, 2, 3)));
        UElement lam = u_sub(make_r(), make_r21());
        bool identity = u_sub(gen, big_bracket(make_r(), lam)).is_zero();
        std::cout << "    note: embedded [t12,t23] "
                  << (identity ? "EQUALS" : "differs from") << " [[r, r - r21]] exactly;"
                  << " the stated generator is a coboundary in this realization\n";
    }
}

void criterion_5() {
    Criterion c("5. centrality and invariance on full bases");
    bool central = true;
    for (int n = 1; n <= 3 && central; ++n) {
        UElement z = u_zero(n);
        for (int k = 1; k <= n; ++k) u_add(z, u_insert(make_mr(), {{k}}, n));
        for (int N = 0; N <= 3 && central; ++N)
            for (const Diagram& d : u_basis(n, N)) {
                UElement y{n, {}};
                y.terms.emplace(d, Rat(1));
                if (!u_commutator(z, y).is_zero()) {
                    central = false;
                    break;
                }
            }
    }
    c.sub("multiplication image commutes with every basis diagram, n <= 3, N <= 3", central);

    bool invariant = true;
    for (int n = 1; n <= 3 && invariant; ++n) {
        UElement t12 = make_t_ij(n + 1, 1, 2);
        for (int N = 0; N <= 3 && invariant; ++N)
            for (const Diagram& d : u_basis(n, N)) {
                UElement x{n, {}};
                x.terms.emplace(d, Rat(1));
                std::vector<std::vector<int>> blocks;
                blocks.push_back({1, 2});
                for (int k = 2; k <= n; ++k) blocks.push_back({k + 1});
                if (!u_commutator(t12, u_insert(x, blocks, n + 1)).is_zero()) {
                    invariant = false;
                    break;
                }
            }
    }
    c.sub("merged insertions commute with the symmetric generator, n <= 3, N <= 3", invariant);
}

Associator g_assoc; // shared by later criteria
Twist g_twist;

void criterion_6() {
    Criterion c("6. associator at order 4");
    g_assoc = solve_associator(4);
    c.sub("degree-1 component vanishes", g_assoc.phi.comp[1].is_zero());
    AssociatorReport rep = verify_associator(g_assoc.phi, 4);
    c.sub("duality residuals vanish through degree 4", rep.duality_bad.empty());
    c.sub("pentagon residuals vanish through degree 4", rep.pentagon_bad.empty());
    c.sub("hexagon residuals vanish through degree 4", rep.hexagon_bad.empty());
    ChordElement com = chord_commutator(chord_gen(3, 1, 2), chord_gen(3, 2, 3));
    bool form = chord_sub(g_assoc.phi.comp[2], chord_scale(com, g_assoc.phi2_coefficient)).is_zero();
    c.sub("degree-2 component is a commutator multiple", form,
          "coefficient " + g_assoc.phi2_coefficient.str());
}

void criterion_7() {
    Criterion c("7. twist at order 4");
    try {
        g_twist = solve_twist(g_assoc, 4);
    } catch (const std::exception& e) {
        c.sub(std::string("solver aborted: ") + e.what(), false);
        return;
    }
    c.sub("degree-1 component is -r/2",
          u_sub(g_twist.j.comp[1], u_scale(make_r(), Rat(-1, 2))).is_zero());
    USeries lhs = dtilde(g_twist.j);
    USeries rhs = mu_embed_series(g_assoc.phi, 4);
    bool eq = true;
    for (int k = 0; k <= 4; ++k) eq = eq && u_sub(lhs.comp[k], rhs.comp[k]).is_zero();
    c.sub("coboundary equals the embedded associator through degree 4", eq);
    c.sub("in-loop cohomological assertions all passed", true, "solver completed");
}

void criterion_8() {
    Criterion c("8. universal braiding through degree 3");
    Twist t3;
    t3.order = 3;
    t3.j = g_twist.j.truncated(3);
    t3.phi = g_assoc.phi;
    RMatrix R = build_R(t3);
    for (const auto& rep : check_qybe(R)) c.sub(rep.check, rep.ok());
    for (const auto& rep : check_form(R)) c.sub(rep.check, rep.ok());
    for (const auto& rep : check_quasitriangular(t3, R)) c.sub(rep.check, rep.ok());
}

void criterion_9() {
    Criterion c("9. specialization and quantization");
    LieBialgebra b = make_borel2_bialgebra();
    c.sub("fixture satisfies the bialgebra relations", validate_bialgebra(b).ok());
    DoubleAlgebra D = build_double(b);

    Rng rng(777);
    bool morphism = true;
    for (int it = 0; it < 5 && morphism; ++it) {
        int da = rng.range(1, 3), db = rng.range(1, 3);
        UElement x = testutil::random_u(rng, 2, da, 2);
        UElement y = testutil::random_u(rng, 2, db, 2);
        HSeries l = specialize_element(u_product(x, y), D, 6);
        h_add(l, h_mul(D, specialize_element(x, D, 6), specialize_element(y, D, 6)), Rat(-1));
        morphism = h_is_zero(l);
    }
    c.sub("specialization is an algebra morphism on random degree <= 3 pairs", morphism);

    QuantizeReport q = quantize(b, g_twist, 3);
    for (const auto& l : q.lines) c.sub(l.id, l.pass, l.detail);
    QuantizeReport f = flatness_check(b, g_twist, 2, 2);
    for (const auto& l : f.lines) c.sub(l.id, l.pass, l.detail);
}

void criterion_10() {
    Criterion c("10. determinism of the pipeline");
    Associator a1 = solve_associator(3);
    Associator a2 = solve_associator(3);
    bool ok = serialize_associator(a1) == serialize_associator(a2);
    Twist t1 = solve_twist(a1, 3);
    Twist t2 = solve_twist(a2, 3);
    ok = ok && serialize_twist(t1) == serialize_twist(t2);
    RMatrix r1 = build_R(t1), r2 = build_R(t2);
    ok = ok && serialize_rmatrix(r1) == serialize_rmatrix(r2);
    c.sub("two full runs produce byte-identical artifacts", ok);
}

} // namespace

int main() {
    std::cout << "acceptance suite (exact arithmetic; all residuals must vanish)\n\n";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}

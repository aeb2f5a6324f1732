#include "uqa/twist.hpp"

#include "uqa/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace uqa {

USeries dtilde(const USeries& j) {
    if (j.n != 2) throw std::invalid_argument("dtilde: need two slots");
    USeries j23 = useries_insert(j, {{2}, {3}}, 3);
    USeries j1_23 = useries_insert(j, {{1}, {2, 3}}, 3);
    USeries j12 = useries_insert(j, {{1}, {2}}, 3);
    USeries j12_3 = useries_insert(j, {{1, 2}, {3}}, 3);
    return useries_mul(useries_inverse(useries_mul(j23, j1_23)), useries_mul(j12, j12_3));
}

USeries gauge(const USeries& u, const USeries& j) {
    if (u.n != 1 || j.n != 2) throw std::invalid_argument("gauge: arity mismatch");
    USeries u1 = useries_insert(u, {{1}}, 2);
    USeries u2 = useries_insert(u, {{2}}, 2);
    USeries u12 = useries_insert(u, {{1, 2}}, 2);
    return useries_mul(u1, useries_mul(u2, useries_mul(j, useries_inverse(u12))));
}

USeries gauge3(const USeries& u, const USeries& phi) {
    if (u.n != 1 || phi.n != 3) throw std::invalid_argument("gauge3: arity mismatch");
    USeries u123 = useries_insert(u, {{1, 2, 3}}, 3);
    return useries_mul(u123, useries_mul(phi, useries_inverse(u123)));
}

USeries exp_shift_residual(const UElement& Y, const Rat& alpha, int order) {
    USeries sy = USeries::from_element(Y, order);
    USeries t{2, order, {}};
    t.comp.assign(order + 1, u_zero(2));
    u_add(t.comp[1], make_t(), alpha);
    USeries lhs = useries_mul(sy, useries_exp(t));

    USeries mr{1, order, {}};
    mr.comp.assign(order + 1, u_zero(1));
    u_add(mr.comp[1], make_mr(), -alpha);
    USeries rhs = gauge(useries_exp(mr), sy);

    USeries res = lhs;
    for (int k = 0; k <= order; ++k) u_add(res.comp[k], rhs.comp[k], Rat(-1));
    return res;
}

namespace {

// f(lambda) = -(1/2)( r^{1,2}(l^{1,3}+l^{2,3}) + l^{1,2}(r^{1,3}+r^{2,3})
//                     - r^{2,3}(l^{1,2}+l^{1,3}) - l^{2,3}(r^{1,2}+r^{1,3}) )
UElement f_of_lambda(const UElement& lam) {
    auto at = [](const UElement& e, int i, int j) { return u_insert(e, {{i}, {j}}, 3); };
    const UElement r = make_r();
    UElement term = u_zero(3);
    {
        UElement s = at(lam, 1, 3);
        u_add(s, at(lam, 2, 3));
        u_add(term, u_product(at(r, 1, 2), s));
    }
    {
        UElement s = at(r, 1, 3);
        u_add(s, at(r, 2, 3));
        u_add(term, u_product(at(lam, 1, 2), s));
    }
    {
        UElement s = at(lam, 1, 2);
        u_add(s, at(lam, 1, 3));
        u_add(term, u_product(at(r, 2, 3), s), Rat(-1));
    }
    {
        UElement s = at(r, 1, 2);
        u_add(s, at(r, 1, 3));
        u_add(term, u_product(at(lam, 2, 3), s), Rat(-1));
    }
    return u_scale(term, Rat(-1, 2));
}

// deterministic solve of cohoch_d(x) = rhs over (U_2)_deg
UElement solve_d2(const UElement& rhs, int deg) {
    auto basis = u_basis(2, deg);
    std::vector<UElement> cols;
    for (const Diagram& d : basis) {
        UElement e{2, {}};
        e.terms.emplace(d, Rat(1));
        cols.push_back(cohoch_d(e));
    }
    std::map<Diagram, int> ridx;
    for (const auto& e : cols)
        for (const auto& [d, c] : e.terms) ridx.emplace(d, 0);
    for (const auto& [d, c] : rhs.terms) ridx.emplace(d, 0);
    int nrows = 0;
    for (auto& [d, i] : ridx) i = nrows++;
    SparseMatrix m(nrows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [d, c] : cols[j].terms) m.set(ridx.at(d), static_cast<int>(j), c);
    auto x = solve(m, coords_in(ridx, rhs, nrows));
    if (!x) throw TwistError(deg, "twist: the auxiliary correction equation is inconsistent");
    UElement out = u_zero(2);
    for (size_t j = 0; j < basis.size(); ++j) u_add_term(out, basis[j], (*x)[j]);
    return out;
}

} // namespace

Twist solve_twist(const Associator& assoc, int order) {
    if (order < 1) throw std::invalid_argument("solve_twist: order must be positive");
    if (assoc.order < order)
        throw std::invalid_argument("solve_twist: associator order too small");
    USeries phi_emb = mu_embed_series(assoc.phi, order);

    USeries j = USeries::one(2, order);
    u_add(j.comp[1], make_r(), Rat(-1, 2));

    for (int n = 2; n <= order; ++n) {
        USeries cur = dtilde(j);
        UElement Z = u_sub(phi_emb.comp[n], cur.comp[n]);

        UElement dz = cohoch_d(Z);
        if (!dz.is_zero()) {
            std::ostringstream os;
            os << "twist degree " << n << ": right-hand side is not a cocycle ("
               << dz.terms.size() << " residual terms)";
            throw TwistError(n, os.str());
        }
        auto [K, mu] = split_cocycle(Z);
        UElement lam;
        try {
            lam = solve_lambda(mu);
        } catch (const std::invalid_argument& e) {
            throw TwistError(n, std::string("twist: ") + e.what());
        } catch (const CohomologyObstruction& e) {
            throw TwistError(n, std::string("twist: ") + e.what());
        }

        UElement fprime = u_zero(2);
        if (!lam.is_zero()) {
            UElement rhs = f_of_lambda(lam);
            u_add(rhs, big_bracket(make_r(), lam), Rat(1, 6));
            fprime = solve_d2(rhs, n);
        }
        u_add(j.comp[n - 1], lam);
        j.comp[n] = u_sub(K, fprime);

        USeries re = dtilde(j);
        for (int k = 0; k <= n; ++k) {
            if (!u_sub(re.comp[k], phi_emb.comp[k]).is_zero()) {
                std::ostringstream os;
                os << "twist degree " << n << ": postcondition failed at degree " << k;
                throw TwistError(n, os.str());
            }
        }
    }
    Twist out;
    out.order = order;
    out.j = j;
    out.phi = assoc.phi;
    return out;
}

RMatrix build_R(const Twist& twist) {
    const int order = twist.order;
    USeries j21 = useries_slot_permute(twist.j, {2, 1});
    USeries t{2, order, {}};
    t.comp.assign(order + 1, u_zero(2));
    u_add(t.comp[1], make_t(), Rat(1, 2));
    USeries R = useries_mul(j21, useries_mul(useries_exp(t), useries_inverse(twist.j)));
    return RMatrix{order, R};
}

namespace {

USeries at3(const USeries& s, int i, int j) { return useries_insert(s, {{i}, {j}}, 3); }

} // namespace

std::vector<DegreeReport> check_qybe(const RMatrix& R) {
    const int order = R.order;
    std::vector<DegreeReport> out;
    USeries r12 = at3(R.r_series, 1, 2), r13 = at3(R.r_series, 1, 3), r23 = at3(R.r_series, 2, 3);
    USeries lhs = useries_mul(r12, useries_mul(r13, r23));
    USeries rhs = useries_mul(r23, useries_mul(r13, r12));
    DegreeReport direct{"qybe.degreewise", {}};
    for (int k = 0; k <= order; ++k)
        if (!u_sub(lhs.comp[k], rhs.comp[k]).is_zero()) direct.bad_degrees.push_back(k);
    out.push_back(std::move(direct));

    // degreewise bracket recursion: the commutator terms with r collect into
    // the six-term bracket; the remaining split-index commutators (both
    // indices at least 2) enter from degree 3 on
    DegreeReport rec{"qybe.bracket-recursion", {}};
    const UElement r = make_r();
    for (int N = 1; N <= order; ++N) {
        UElement want = big_bracket(r, R.r_series.comp[N]);
        UElement sum = u_zero(3);
        for (int p = 1; p <= N - 1; ++p)
            for (int pp = 1; p + pp <= N; ++pp) {
                int ppp = N + 1 - p - pp;
                if (ppp < 1) continue;
                UElement a = u_insert(R.r_series.comp[ppp], {{2}, {3}}, 3);
                UElement b = u_insert(R.r_series.comp[pp], {{1}, {3}}, 3);
                UElement c = u_insert(R.r_series.comp[p], {{1}, {2}}, 3);
                u_add(sum, u_product(a, u_product(b, c)));
                u_add(sum, u_product(c, u_product(b, a)), Rat(-1));
            }
        for (int a = 2; a <= N - 1; ++a) {
            int bdeg = N + 1 - a;
            if (bdeg < 2) continue;
            UElement a12 = u_insert(R.r_series.comp[a], {{1}, {2}}, 3);
            UElement a13 = u_insert(R.r_series.comp[a], {{1}, {3}}, 3);
            UElement b13 = u_insert(R.r_series.comp[bdeg], {{1}, {3}}, 3);
            UElement b23 = u_insert(R.r_series.comp[bdeg], {{2}, {3}}, 3);
            u_add(sum, u_commutator(a13, b23), Rat(-1));
            u_add(sum, u_commutator(a12, b23), Rat(-1));
            u_add(sum, u_commutator(a12, b13), Rat(-1));
        }
        if (!u_sub(want, sum).is_zero()) rec.bad_degrees.push_back(N);
    }
    out.push_back(std::move(rec));
    return out;
}

std::vector<DegreeReport> check_form(const RMatrix& R) {
    std::vector<DegreeReport> out;
    DegreeReport m1{"form.slot2-y-positive", {}};
    DegreeReport m2{"form.slot1-x-positive", {}};
    SlotPattern bad1, bad2;
    bad1.slot.resize(2);
    bad1.slot[1].bmax = 0; // slot-2 y-side empty: forbidden for positive degree
    bad2.slot.resize(2);
    bad2.slot[0].amax = 0; // slot-1 x-side empty: forbidden for positive degree
    for (int N = 1; N <= R.order; ++N) {
        if (!project_component(R.r_series.comp[N], bad1).is_zero()) m1.bad_degrees.push_back(N);
        if (!project_component(R.r_series.comp[N], bad2).is_zero()) m2.bad_degrees.push_back(N);
    }
    out.push_back(std::move(m1));
    out.push_back(std::move(m2));
    return out;
}

std::vector<DegreeReport> check_quasitriangular(const Twist& twist, const RMatrix& R) {
    const int order = R.order;
    std::vector<DegreeReport> out;
    USeries j12 = at3(twist.j, 1, 2), j23 = at3(twist.j, 2, 3);
    USeries r12 = at3(R.r_series, 1, 2), r13 = at3(R.r_series, 1, 3), r23 = at3(R.r_series, 2, 3);

    {
        USeries lhs = useries_mul(
            j12, useries_mul(useries_insert(R.r_series, {{1, 2}, {3}}, 3), useries_inverse(j12)));
        USeries rhs = useries_mul(r13, r23);
        DegreeReport rep{"quasitriangular.split-first", {}};
        for (int k = 0; k <= order; ++k)
            if (!u_sub(lhs.comp[k], rhs.comp[k]).is_zero()) rep.bad_degrees.push_back(k);
        out.push_back(std::move(rep));
    }
    {
        USeries lhs = useries_mul(
            j23, useries_mul(useries_insert(R.r_series, {{1}, {2, 3}}, 3), useries_inverse(j23)));
        USeries rhs = useries_mul(r13, r12);
        DegreeReport rep{"quasitriangular.split-second", {}};
        for (int k = 0; k <= order; ++k)
            if (!u_sub(lhs.comp[k], rhs.comp[k]).is_zero()) rep.bad_degrees.push_back(k);
        out.push_back(std::move(rep));
    }
    {
        USeries lhs = dtilde(twist.j);
        USeries rhs = mu_embed_series(twist.phi, order);
        DegreeReport rep{"quasitriangular.twisted-associator", {}};
        for (int k = 0; k <= order; ++k)
            if (!u_sub(lhs.comp[k], rhs.comp[k]).is_zero()) rep.bad_degrees.push_back(k);
        out.push_back(std::move(rep));
    }
    {
        // invariance of the embedded associator against merged insertions of J
        DegreeReport rep{"quasitriangular.associator-invariance", {}};
        USeries phi_emb = mu_embed_series(twist.phi, order);
        for (int k = 1; k <= std::min(order, 2); ++k) {
            UElement X = u_insert(twist.j.comp[k], {{1, 2, 3}, {4}}, 4);
            for (int m = 0; m + k <= order; ++m) {
                UElement ph = u_insert(phi_emb.comp[m], {{1}, {2}, {3}}, 4);
                if (!u_commutator(ph, X).is_zero()) {
                    rep.bad_degrees.push_back(m + k);
                }
            }
        }
        std::sort(rep.bad_degrees.begin(), rep.bad_degrees.end());
        rep.bad_degrees.erase(std::unique(rep.bad_degrees.begin(), rep.bad_degrees.end()),
                              rep.bad_degrees.end());
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace uqa

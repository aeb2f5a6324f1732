#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "testutil.hpp"
#include "uqa/twist.hpp"

using namespace uqa;
using uqa::testutil::Rng;

namespace {

USeries random_invertible_u1(Rng& rng, int order) {
    USeries u = USeries::one(1, order);
    for (int d = 1; d <= order; ++d) u.comp[d] = testutil::random_u(rng, 1, d, 2);
    return u;
}

USeries random_invertible_u2(Rng& rng, int order) {
    USeries j = USeries::one(2, order);
    for (int d = 1; d <= order; ++d) j.comp[d] = testutil::random_u(rng, 2, d, 2);
    return j;
}

bool series_equal(const USeries& a, const USeries& b) {
    if (a.order != b.order || a.n != b.n) return false;
    for (int k = 0; k <= a.order; ++k)
        if (!u_sub(a.comp[k], b.comp[k]).is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("dtilde basics") {
    USeries one = USeries::one(2, 2);
    USeries d1 = dtilde(one);
    CHECK(u_sub(d1.comp[0], u_one(3)).is_zero());
    CHECK(d1.comp[1].is_zero());
    CHECK(d1.comp[2].is_zero());

    // dtilde(1 - r/2) is 1 through degree 1
    USeries j = USeries::one(2, 2);
    u_add(j.comp[1], make_r(), Rat(-1, 2));
    USeries dj = dtilde(j);
    CHECK(u_sub(dj.comp[0], u_one(3)).is_zero());
    CHECK(dj.comp[1].is_zero());
}

TEST_CASE("gauge action") {
    Rng rng(2121);
    USeries j = random_invertible_u2(rng, 2);
    USeries one = USeries::one(1, 2);
    CHECK(series_equal(gauge(one, j), j));

    // u = 1 + alpha m(r): gauge(u, 1) = 1 - alpha t + higher
    USeries u = USeries::one(1, 2);
    u_add(u.comp[1], make_mr(), Rat(3));
    USeries g = gauge(u, USeries::one(2, 2));
    CHECK(u_sub(g.comp[1], u_scale(make_t(), Rat(-3))).is_zero());

    // group action property
    USeries v = random_invertible_u1(rng, 2);
    USeries w = random_invertible_u1(rng, 2);
    CHECK(series_equal(gauge(v, gauge(w, j)), gauge(useries_mul(v, w), j)));
}

TEST_CASE("gauge equivariance of dtilde") {
    Rng rng(33);
    USeries u = random_invertible_u1(rng, 2);
    USeries j = random_invertible_u2(rng, 2);
    USeries lhs = dtilde(gauge(u, j));
    USeries rhs = gauge3(u, dtilde(j));
    CHECK(series_equal(lhs, rhs));
}

TEST_CASE("shift identity") {
    CHECK(useries_is_zero(exp_shift_residual(u_one(2), Rat(1), 3)));
    CHECK(useries_is_zero(exp_shift_residual(make_r(), Rat(0), 2)));
    CHECK(useries_is_zero(exp_shift_residual(make_r(), Rat(1, 2), 3)));
}

TEST_CASE("twist at order 1 is 1 - r/2") {
    Associator a = solve_associator(1);
    Twist tw = solve_twist(a, 1);
    CHECK(u_sub(tw.j.comp[0], u_one(2)).is_zero());
    CHECK(u_sub(tw.j.comp[1], u_scale(make_r(), Rat(-1, 2))).is_zero());
}

TEST_CASE("twist round trip at orders 2 and 3") {
    Associator a = solve_associator(3);
    for (int order : {2, 3}) {
        Twist tw = solve_twist(a, order);
        CHECK(u_sub(tw.j.comp[1], u_scale(make_r(), Rat(-1, 2))).is_zero());
        USeries lhs = dtilde(tw.j);
        USeries rhs = mu_embed_series(a.phi, order);
        CHECK(series_equal(lhs, rhs));
        // gauge freedom leaves dtilde fixed
        Rng rng(7 + order);
        USeries u = random_invertible_u1(rng, order);
        CHECK(series_equal(dtilde(gauge(u, tw.j)), lhs));
    }
}

TEST_CASE("r-matrix construction and checks at order 2") {
    Associator a = solve_associator(2);
    Twist tw = solve_twist(a, 2);
    RMatrix R = build_R(tw);
    CHECK(u_sub(R.r_series.comp[0], u_one(2)).is_zero());
    CHECK(u_sub(R.r_series.comp[1], make_r()).is_zero());

    for (const auto& rep : check_qybe(R)) CHECK(rep.ok());
    for (const auto& rep : check_form(R)) CHECK(rep.ok());
    for (const auto& rep : check_quasitriangular(tw, R)) CHECK(rep.ok());
}

TEST_CASE("fault injection is detected") {
    Associator a = solve_associator(2);
    Twist tw = solve_twist(a, 2);
    RMatrix R = build_R(tw);
    // corrupt one coefficient
    RMatrix bad = R;
    u_add(bad.r_series.comp[2], u_product(make_r(), make_r()), Rat(1, 7));
    bool qybe_found = false;
    for (const auto& rep : check_qybe(bad)) qybe_found = qybe_found || !rep.ok();
    CHECK(qybe_found);

    // a term with empty slot-2 y-side violates the first membership
    RMatrix bad2 = R;
    u_add(bad2.r_series.comp[1], u_insert(make_mr(), {{1}}, 2));
    auto reps = check_form(bad2);
    CHECK(!reps[0].ok());
    CHECK(reps[0].bad_degrees == std::vector<int>{1});
    CHECK(reps[1].ok());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "uqa/twist.hpp"

using namespace uqa;

TEST_CASE("order zero and one values") {
    Associator a = solve_associator(1);
    Twist tw = solve_twist(a, 1);
    RMatrix R = build_R(tw);
    CHECK(u_sub(R.r_series.comp[0], u_one(2)).is_zero());
    // -r21/2 + t/2 + r/2 = r
    CHECK(u_sub(R.r_series.comp[1], make_r()).is_zero());
}

TEST_CASE("swap symmetry of the construction") {
    Associator a = solve_associator(2);
    Twist tw = solve_twist(a, 2);
    RMatrix R = build_R(tw);

    Twist swapped = tw;
    swapped.j = useries_slot_permute(tw.j, {2, 1});
    RMatrix R2 = build_R(swapped);
    USeries want = useries_slot_permute(R.r_series, {2, 1});
    for (int k = 0; k <= 2; ++k) CHECK(u_sub(R2.r_series.comp[k], want.comp[k]).is_zero());
}

TEST_CASE("degree one is the classical limit") {
    Associator a = solve_associator(2);
    Twist tw = solve_twist(a, 2);
    RMatrix R = build_R(tw);
    for (const auto& rep : check_qybe(R)) {
        CHECK(rep.ok());
        for (int d : rep.bad_degrees) CHECK(d > 1);
    }
}

TEST_CASE("membership counterexample is caught at the right degree") {
    Associator a = solve_associator(2);
    Twist tw = solve_twist(a, 2);
    RMatrix R = build_R(tw);
    RMatrix bad = R;
    // m(r)^2 keeps a y in the second slot but empties the first slot's
    // x-side: violates the second membership only
    u_add(bad.r_series.comp[1], u_insert(make_mr(), {{2}}, 2), Rat(5));
    auto reps = check_form(bad);
    CHECK(reps[0].ok());
    CHECK(!reps[1].ok());
    CHECK(reps[1].bad_degrees == std::vector<int>{1});
}

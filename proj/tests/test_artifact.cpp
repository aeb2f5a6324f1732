#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "uqa/artifact.hpp"

using namespace uqa;

namespace {

bool useries_equal(const USeries& a, const USeries& b) {
    if (a.n != b.n || a.order != b.order) return false;
    for (int k = 0; k <= a.order; ++k)
        if (!u_sub(a.comp[k], b.comp[k]).is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("golden serialization of the canonical element") {
    USeries s = USeries::from_element(make_r(), 1);
    std::string text = serialize_useries(s);
    std::string want =
        "uqa-artifact/1\n"
        "kind: u-series\n"
        "digest: 109e32f37401ea92\n"
        "payload:\n"
        "n: 2\n"
        "order: 1\n"
        "deg 0: 0\n"
        "deg 1: 1\n"
        "1 * x=1|0 y=|1\n";
    CHECK(text == want);
    CHECK(useries_equal(parse_useries(text), s));
}

TEST_CASE("round trip on solver outputs") {
    Associator a = solve_associator(3);
    std::string sa = serialize_associator(a);
    Associator a2 = parse_associator(sa);
    CHECK(a2.order == a.order);
    CHECK(a2.phi2_coefficient == a.phi2_coefficient);
    CHECK(serialize_associator(a2) == sa);

    Twist tw = solve_twist(a, 2);
    std::string st = serialize_twist(tw);
    Twist tw2 = parse_twist(st);
    CHECK(useries_equal(tw2.j, tw.j));
    CHECK(serialize_twist(tw2) == st);

    RMatrix R = build_R(tw);
    std::string sr = serialize_rmatrix(R);
    CHECK(serialize_rmatrix(parse_rmatrix(sr)) == sr);

    LieBialgebra b = make_borel2_bialgebra();
    std::string sb = serialize_bialgebra(b);
    LieBialgebra b2 = parse_bialgebra(sb);
    CHECK(serialize_bialgebra(b2) == sb);
    CHECK(validate_bialgebra(b2).ok());
}

TEST_CASE("chord series round trip") {
    Associator a = solve_associator(2);
    std::string text = serialize_chord_series(a.phi);
    ChordSeries s2 = parse_chord_series(text);
    CHECK(s2.n == 3);
    CHECK(s2.order == 2);
    for (int k = 0; k <= 2; ++k) CHECK(chord_sub(s2.comp[k], a.phi.comp[k]).is_zero());
    CHECK(serialize_chord_series(s2) == text);
}

TEST_CASE("digest mismatch is rejected") {
    USeries s = USeries::from_element(make_r(), 1);
    std::string text = serialize_useries(s);
    // corrupt one payload byte
    text[text.size() - 2] = '2';
    CHECK_THROWS_AS((void)parse_useries(text), ParseError);
    // and a wrong kind
    std::string t2 = serialize_useries(s);
    CHECK_THROWS_AS((void)parse_chord_series(t2), ParseError);
}

TEST_CASE("determinism of serialization") {
    Associator a1 = solve_associator(2);
    Associator a2 = solve_associator(2);
    CHECK(serialize_associator(a1) == serialize_associator(a2));
    Twist t1 = solve_twist(a1, 2), t2 = solve_twist(a2, 2);
    CHECK(serialize_twist(t1) == serialize_twist(t2));
}

#pragma once

#include "uqa/associator.hpp"
#include "uqa/cohomology.hpp"
#include "uqa/ualg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace uqa {

struct TwistError : std::runtime_error {
    int degree;
    TwistError(int deg, const std::string& what) : std::runtime_error(what), degree(deg) {}
};

// Invertible two-slot series J with constant term 1, degree-1 component -r/2,
// and dtilde(J) equal to the embedded associator through the order.
struct Twist {
    int order = 0;
    USeries j;
    ChordSeries phi; // the associator it solves against
};

struct RMatrix {
    int order = 0;
    USeries r_series;
};

// dtilde(J) = (J^{2,3} J^{1,23})^{-1} J^{1,2} J^{12,3}
USeries dtilde(const USeries& j);

// u * J = u^1 u^2 J (u^{12})^{-1};  u * Phi = u^{123} Phi (u^{123})^{-1}
USeries gauge(const USeries& u, const USeries& j);
USeries gauge3(const USeries& u, const USeries& phi);

// residual of  Y e^{alpha t} = e^{-alpha m(r)} * Y, truncated
USeries exp_shift_residual(const UElement& Y, const Rat& alpha, int order);

// Degree-by-degree solve of dtilde(J) = embedded phi; every intermediate
// cohomological fact is asserted and failures abort with the degree.
Twist solve_twist(const Associator& assoc, int order);

// R = J^{2,1} e^{t/2} J^{-1}
RMatrix build_R(const Twist& twist);

struct DegreeReport {
    std::string check;
    std::vector<int> bad_degrees;
    bool ok() const { return bad_degrees.empty(); }
};

// residuals of R12 R13 R23 - R23 R13 R12 and of the degreewise recursion
std::vector<DegreeReport> check_qybe(const RMatrix& R);

// both component memberships: slot-2 y-side positive, slot-1 x-side positive
std::vector<DegreeReport> check_form(const RMatrix& R);

// twisted-coproduct identities, the twisted associator, and invariance of the
// embedded associator under merged insertions against J
std::vector<DegreeReport> check_quasitriangular(const Twist& twist, const RMatrix& R);

} // namespace uqa

#pragma once

#include <string>
#include <vector>

#include "lhgeom/covid.hpp"
#include "lhgeom/field.hpp"
#include "lhgeom/kcc.hpp"

namespace lhgeom {

struct CheckResult {
    std::string name;
    double worst = 0.0;  // largest absolute deviation observed
    double tol = 0.0;    // admissible deviation; 0 means the check is exact
    bool pass = false;
};

// Reconstruction of the curvature matrix through the covariant derivative
// of the first invariant,
//   E^i_j ~ d(E^i)/dx^j - N^r_j d(E^i)/dy^r,
// with both partial derivative blocks taken by central differences on
// first_invariant. h = 0 picks the default step per variable.
Mat curvature_delta_oracle(const VectorField& f, const TangentPoint& tp, double h = 0.0);

// End-to-end numerical reconstruction of the deviation curvature,
// P = sum_k (dN/dx^k) y^k + E, with every derivative taken by finite
// differences, including those inside N and the first invariant. Analytic
// derivatives of f are deliberately ignored.
Mat deviation_curvature_fd(const VectorField& f, const TangentPoint& tp, double h = 0.0);

// Oracle checks local to one tangent point: analytic derivatives against
// finite differences, the algebraic connection/torsion identities, the
// Yang-Mills energy identity, the two evaluation paths of the first
// invariant, and the curvature/deviation reconstructions above.
std::vector<CheckResult> point_checks(const VectorField& f, const TangentPoint& tp);

// Full suite: point checks at the given state and a deterministic set of
// random states at the same scale (worst offender kept per check), plus
// conservation drift for both integrators and the Euler-Lagrange residual
// along a short trajectory. A numerical failure inside one check marks
// that check failed instead of aborting the suite.
std::vector<CheckResult> run_validation(const ModelParams& params, const Vec& x0);

bool all_pass(const std::vector<CheckResult>& checks);

// Fixed-width pass/fail table plus a summary line; the summary names the
// worst offender when anything failed.
std::string format_check_table(const std::vector<CheckResult>& checks);

} // namespace lhgeom

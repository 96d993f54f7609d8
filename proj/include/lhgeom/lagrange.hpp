#pragma once

#include <vector>

#include "lhgeom/field.hpp"
#include "lhgeom/mat.hpp"

namespace lhgeom {

// Point of the tangent bundle: base state x and velocity y.
struct TangentPoint {
    Vec x;
    Vec y;
};

// L(x, y) = sum_i (y_i - X_i(x))^2. Zero exactly on solutions of x' = X(x),
// positive elsewhere; its extremals reproduce those solutions.
double lagrangian(const VectorField& f, const TangentPoint& tp);

// Spray coefficients G^k putting the Euler-Lagrange equations of L into the
// form x'' + 2G(x, x') = 0:
//   G^k = -1/2 [ ((J - J^t) y)^k + (J^t X)^k ].
Vec semispray(const VectorField& f, const TangentPoint& tp);

// Canonical nonlinear connection on the tangent side, N = -1/2 (J - J^t).
// Skew-symmetric by construction: the upper triangle is computed and
// mirrored with exact negation.
Mat connection_lagrange(const VectorField& f, const Vec& x);

// d-torsions R_k = dN/dx^k, one skew-symmetric matrix per axis, computed
// from the analytic Hessian stack:
//   (R_k)_ij = -1/2 (H_i(j,k) - H_j(i,k)).
std::vector<Mat> torsions_lagrange(const VectorField& f, const Vec& x);

// Yang-Mills-type energy of the connection, EYM = 1/2 Tr(F F^t) with
// F = -N. The trace form is the canonical value.
double yang_mills_energy(const Mat& n_connection);
double yang_mills_energy(const VectorField& f, const Vec& x);

// Cross-check path: sum of squares of the strictly-upper entries. Equals
// the trace form for any skew-symmetric matrix.
double yang_mills_pair_sum(const Mat& n_connection);

// Everything above evaluated at one tangent point.
struct LagrangeGeometry {
    double L = 0.0;
    Vec G;
    Mat N;
    std::vector<Mat> R;
    double EYM = 0.0;
};
LagrangeGeometry lagrange_geometry(const VectorField& f, const TangentPoint& tp);

// Discrete residual of x'' + 2G(x, x') = 0 along a uniformly sampled
// trajectory: second central difference for x'', first central difference
// for x', evaluated at interior samples. Returns one 6-vector per interior
// sample. Throws std::invalid_argument for fewer than 3 samples.
std::vector<Vec> euler_lagrange_residual(const VectorField& f, const std::vector<double>& times,
                                         const std::vector<Vec>& states);

} // namespace lhgeom

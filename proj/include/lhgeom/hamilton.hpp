#pragma once

#include <vector>

#include "lhgeom/field.hpp"
#include "lhgeom/lagrange.hpp"
#include "lhgeom/mat.hpp"

namespace lhgeom {

// Point of the cotangent bundle: base state x and momentum p.
struct CotangentPoint {
    Vec x;
    Vec p;
};

// H(x, p) = 1/4 sum_i p_i^2 + sum_k X^k(x) p_k, the Legendre dual of the
// least-squares Lagrangian.
double hamiltonian(const VectorField& f, const CotangentPoint& cp);

// Fiber derivative of L: p_r = dL/dy^r = 2 (y_r - X_r(x)).
Vec legendre_momentum(const VectorField& f, const TangentPoint& tp);

// Canonical nonlinear connection on the cotangent side, N_H = J + J^t.
// Symmetric by construction (upper triangle mirrored).
Mat connection_hamilton(const VectorField& f, const Vec& x);

// Cotangent d-torsions, d(J - J^t)/dx^k from the analytic Hessian stack:
//   (R_H_k)_ij = H_i(j,k) - H_j(i,k).
// Exactly -2 times the tangent-side torsions when both are computed from
// the same Hessians.
std::vector<Mat> torsions_hamilton(const VectorField& f, const Vec& x);

} // namespace lhgeom

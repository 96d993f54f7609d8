#pragma once

#include "lhgeom/field.hpp"
#include "lhgeom/lagrange.hpp"
#include "lhgeom/mat.hpp"

namespace lhgeom {

enum class JacobiClass { Stable, Unstable, Marginal };

// Lowercase name used in CSV/JSON output: "stable", "unstable", "marginal".
const char* jacobi_class_name(JacobiClass c);

struct StabilityVerdict {
    ComplexSpectrum spectrum;
    double max_real_part = 0.0;
    JacobiClass classification = JacobiClass::Marginal;
    double margin = 0.0;  // |max_real_part|, the distance from the boundary
};

// First invariant of the semispray, componentwise
//   E^i = -1/2 ((J - J^t) y)^i - (J^t X)^i,
// which coincides with 2 G^i - N^i_j y^j.
Vec first_invariant(const VectorField& f, const TangentPoint& tp);

// Second code path for the same quantity, used as a consistency oracle.
Vec first_invariant_from_parts(const Vec& g, const Mat& n_connection, const Vec& y);

// Curvature contribution E_ij, the covariant x-derivative of the first
// invariant. With H_k the Hessian stack, X the field value, J the Jacobian
// and A = J - J^t:
//   E_ij = -1/2 sum_k (H_i(j,k) - H_k(i,j)) y^k
//          - sum_k H_k(i,j) X^k  - (J^t J)_ij - 1/4 (A^2)_ij.
Mat curvature_matrix_E(const VectorField& f, const TangentPoint& tp);

// Deviation curvature P = sum_k R_k y^k + E. The spectrum of P decides
// Jacobi stability.
Mat deviation_curvature(const VectorField& f, const TangentPoint& tp);

// Classification seam: verdict from a prebuilt deviation matrix. A strict
// sign test is meaningless at floating point, so real parts within
// eps_scale * (1 + ||P||_F) of zero are classified Marginal.
StabilityVerdict classify_deviation(const Mat& p, double eps_scale = 1e-9);

StabilityVerdict jacobi_stability(const VectorField& f, const TangentPoint& tp,
                                  double eps_scale = 1e-9);

} // namespace lhgeom

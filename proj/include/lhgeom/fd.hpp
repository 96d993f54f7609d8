#pragma once

#include <functional>

#include "lhgeom/mat.hpp"

namespace lhgeom {

using ScalarFn = std::function<double(const Vec&)>;
using VectorFn = std::function<Vec(const Vec&)>;
using MatrixFn = std::function<Mat(const Vec&)>;

// Step used when the caller does not supply one: absolute floor plus a
// relative part, since state components span many orders of magnitude.
double default_fd_step(const Vec& x);

// Central-difference Jacobian, column j = (f(x + h e_j) - f(x - h e_j))/(2h).
// Error O(h^2) for smooth f. Throws NumericError naming the axis if the
// field returns a non-finite value at a stencil point.
Mat fd_jacobian(const VectorFn& f, const Vec& x, double h);

// Central second differences of a scalar component, returned symmetrized
// as (H + H^t)/2. Uses the standard 4-point cross stencil off-diagonal.
Mat fd_hessian_component(const ScalarFn& fk, const Vec& x, double h);

// Central difference of a matrix-valued field along axis k (0-based):
// (g(x + h e_k) - g(x - h e_k))/(2h), entrywise.
Mat fd_partial_matrix(const MatrixFn& g, const Vec& x, int k, double h);

} // namespace lhgeom

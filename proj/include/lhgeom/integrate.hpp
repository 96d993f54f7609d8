#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lhgeom/field.hpp"
#include "lhgeom/mat.hpp"

namespace lhgeom {

// Sampled solution of the 7-dimensional augmented system (x, D) with
// D' = deceased inflow. Warnings collect monitored-but-tolerated events
// (negative compartment excursions); they never abort the run.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;       // 6 components per sample
    std::vector<double> deceased;  // D per sample
    std::vector<std::string> warnings;
};

using RateFn = std::function<double(const Vec&)>;

// Classic fourth-order Runge-Kutta with fixed step dt on the augmented
// system. Samples land on t0 + i*dt; the final step is shortened when dt
// does not divide the span. Throws NumericError (annotated with the time)
// when the field fails or a state goes non-finite.
Trajectory integrate_rk4(const VectorField& f, const RateFn& deceased, const Vec& x0, double d0,
                         double t0, double t1, double dt);

// Dormand-Prince 5(4) embedded pair with the standard mixed error norm
// err_i / (atol + rtol * |y_i|), PI-free step control (safety 0.9, growth
// clamped to [0.2, 5]), and cubic Hermite dense output at t0 + i*sample_dt.
// Throws NumericError when the step size underflows 1e-12 * (t1 - t0).
Trajectory integrate_adaptive(const VectorField& f, const RateFn& deceased, const Vec& x0, double d0,
                              double t0, double t1, double rtol, double atol, double sample_dt);

} // namespace lhgeom

#pragma once

#include <functional>
#include <vector>

#include "lhgeom/fd.hpp"
#include "lhgeom/mat.hpp"

namespace lhgeom {

// A first-order autonomous field x' = X(x) together with (optional)
// analytic derivatives. When jac or hess is absent, evaluation falls back
// to the central-difference oracles with the default step, so every
// downstream computation works for any evaluable field.
struct VectorField {
    int dim = 0;
    VectorFn eval;
    std::function<Mat(const Vec&)> jac;                // may be empty
    std::function<std::vector<Mat>(const Vec&)> hess;  // may be empty
};

Vec field_eval(const VectorField& f, const Vec& x);
Mat field_jacobian(const VectorField& f, const Vec& x);
std::vector<Mat> field_hessians(const VectorField& f, const Vec& x);

// Copy of f with the analytic derivative paths stripped, so that every
// derivative downstream is reconstructed by finite differences. Used as
// the end-to-end oracle against the analytic pipeline.
VectorField without_analytic_derivatives(const VectorField& f);

} // namespace lhgeom

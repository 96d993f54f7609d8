#include "lhgeom/field.hpp"

#include <string>

namespace lhgeom {

Vec field_eval(const VectorField& f, const Vec& x) {
    if (static_cast<int>(x.size()) != f.dim)
        throw std::invalid_argument("field_eval: state has dimension " + std::to_string(x.size()) +
                                    ", field expects " + std::to_string(f.dim));
    return f.eval(x);
}

Mat field_jacobian(const VectorField& f, const Vec& x) {
    if (f.jac) return f.jac(x);
    return fd_jacobian(f.eval, x, default_fd_step(x));
}

std::vector<Mat> field_hessians(const VectorField& f, const Vec& x) {
    if (f.hess) return f.hess(x);
    std::vector<Mat> out;
    out.reserve(static_cast<size_t>(f.dim));
    const double h = default_fd_step(x);
    for (int k = 0; k < f.dim; ++k) {
        const auto component = [&f, k](const Vec& z) { return f.eval(z)[static_cast<size_t>(k)]; };
        out.push_back(fd_hessian_component(component, x, h));
    }
    return out;
}

VectorField without_analytic_derivatives(const VectorField& f) {
    VectorField g;
    g.dim = f.dim;
    g.eval = f.eval;
    return g;
}

} // namespace lhgeom

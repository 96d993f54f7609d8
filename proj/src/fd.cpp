#include "lhgeom/fd.hpp"

#include <cmath>
#include <string>

namespace lhgeom {

namespace {

double linf(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

void check_finite(const Vec& v, const char* op, int axis) {
    for (double t : v)
        if (!std::isfinite(t))
            throw NumericError(std::string(op) + ": field non-finite at stencil point along axis " +
                               std::to_string(axis));
}

void check_finite(double v, const char* op, int axis) {
    if (!std::isfinite(v))
        throw NumericError(std::string(op) + ": field non-finite at stencil point along axis " +
                           std::to_string(axis));
}

} // namespace

double default_fd_step(const Vec& x) {
    return std::max(1e-5, 1e-7 * linf(x));
}

Mat fd_jacobian(const VectorFn& f, const Vec& x, double h) {
    if (h <= 0.0) throw std::invalid_argument("fd_jacobian: h must be > 0");
    const int n = static_cast<int>(x.size());
    Mat j(n);
    Vec xp = x, xm = x;
    for (int col = 0; col < n; ++col) {
        xp[static_cast<size_t>(col)] = x[static_cast<size_t>(col)] + h;
        xm[static_cast<size_t>(col)] = x[static_cast<size_t>(col)] - h;
        const Vec fp = f(xp);
        const Vec fm = f(xm);
        check_finite(fp, "fd_jacobian", col);
        check_finite(fm, "fd_jacobian", col);
        for (int row = 0; row < n; ++row)
            j(row, col) = (fp[static_cast<size_t>(row)] - fm[static_cast<size_t>(row)]) / (2.0 * h);
        xp[static_cast<size_t>(col)] = x[static_cast<size_t>(col)];
        xm[static_cast<size_t>(col)] = x[static_cast<size_t>(col)];
    }
    return j;
}

Mat fd_hessian_component(const ScalarFn& fk, const Vec& x, double h) {
    if (h <= 0.0) throw std::invalid_argument("fd_hessian_component: h must be > 0");
    const int n = static_cast<int>(x.size());
    Mat hess(n);
    const double f0 = fk(x);
    check_finite(f0, "fd_hessian_component", -1);
    Vec xx = x;

    for (int i = 0; i < n; ++i) {
        xx[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] + h;
        const double fp = fk(xx);
        xx[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] - h;
        const double fm = fk(xx);
        xx[static_cast<size_t>(i)] = x[static_cast<size_t>(i)];
        check_finite(fp, "fd_hessian_component", i);
        check_finite(fm, "fd_hessian_component", i);
        hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const size_t si = static_cast<size_t>(i), sj = static_cast<size_t>(j);
            xx[si] = x[si] + h; xx[sj] = x[sj] + h;
            const double fpp = fk(xx);
            xx[sj] = x[sj] - h;
            const double fpm = fk(xx);
            xx[si] = x[si] - h;
            const double fmm = fk(xx);
            xx[sj] = x[sj] + h;
            const double fmp = fk(xx);
            xx[si] = x[si]; xx[sj] = x[sj];
            check_finite(fpp, "fd_hessian_component", j);
            check_finite(fpm, "fd_hessian_component", j);
            check_finite(fmm, "fd_hessian_component", j);
            check_finite(fmp, "fd_hessian_component", j);
            const double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            hess(i, j) = v;
            hess(j, i) = v;
        }
    }
    // The cross stencil is already symmetric entry by entry, so the
    // (H + H^t)/2 step is a no-op here; it is kept for contract clarity.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = 0.5 * (hess(i, j) + hess(j, i));
            hess(i, j) = v;
            hess(j, i) = v;
        }
    return hess;
}

Mat fd_partial_matrix(const MatrixFn& g, const Vec& x, int k, double h) {
    if (h <= 0.0) throw std::invalid_argument("fd_partial_matrix: h must be > 0");
    if (k < 0 || k >= static_cast<int>(x.size()))
        throw std::invalid_argument("fd_partial_matrix: axis " + std::to_string(k) + " out of range");
    Vec xp = x, xm = x;
    xp[static_cast<size_t>(k)] += h;
    xm[static_cast<size_t>(k)] -= h;
    const Mat gp = g(xp);
    const Mat gm = g(xm);
    Mat d(gp.dim());
    for (int i = 0; i < d.dim(); ++i)
        for (int j = 0; j < d.dim(); ++j)
            d(i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
    if (!d.is_finite())
        throw NumericError("fd_partial_matrix: non-finite difference along axis " + std::to_string(k));
    return d;
}

} // namespace lhgeom

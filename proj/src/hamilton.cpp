#include "lhgeom/hamilton.hpp"

#include <string>

namespace lhgeom {

double hamiltonian(const VectorField& f, const CotangentPoint& cp) {
    if (static_cast<int>(cp.x.size()) != f.dim || static_cast<int>(cp.p.size()) != f.dim)
        throw std::invalid_argument("hamiltonian: cotangent point dimensions do not match field");
    const Vec x_dot = field_eval(f, cp.x);
    double h = 0.0;
    for (int i = 0; i < f.dim; ++i) {
        const double pi = cp.p[static_cast<size_t>(i)];
        h += 0.25 * pi * pi + x_dot[static_cast<size_t>(i)] * pi;
    }
    return h;
}

Vec legendre_momentum(const VectorField& f, const TangentPoint& tp) {
    const Vec x_dot = field_eval(f, tp.x);
    Vec p(static_cast<size_t>(f.dim));
    for (int i = 0; i < f.dim; ++i)
        p[static_cast<size_t>(i)] =
            2.0 * (tp.y[static_cast<size_t>(i)] - x_dot[static_cast<size_t>(i)]);
    return p;
}

Mat connection_hamilton(const VectorField& f, const Vec& x) {
    const Mat j = field_jacobian(f, x);
    Mat n(j.dim());
    for (int i = 0; i < j.dim(); ++i) {
        n(i, i) = 2.0 * j(i, i);
        for (int k = i + 1; k < j.dim(); ++k) {
            const double v = j(i, k) + j(k, i);
            n(i, k) = v;
            n(k, i) = v;
        }
    }
    return n;
}

std::vector<Mat> torsions_hamilton(const VectorField& f, const Vec& x) {
    const std::vector<Mat> h = field_hessians(f, x);
    const int n = f.dim;
    std::vector<Mat> r(static_cast<size_t>(n), Mat(n));
    for (int k = 0; k < n; ++k) {
        Mat& rk = r[static_cast<size_t>(k)];
        for (int i = 0; i < n; ++i) {
            for (int jj = i + 1; jj < n; ++jj) {
                const double v = h[static_cast<size_t>(i)](jj, k) - h[static_cast<size_t>(jj)](i, k);
                rk(i, jj) = v;
                rk(jj, i) = -v;
            }
        }
    }
    return r;
}

} // namespace lhgeom

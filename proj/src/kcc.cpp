#include "lhgeom/kcc.hpp"

#include <cmath>
#include <string>

namespace lhgeom {

const char* jacobi_class_name(JacobiClass c) {
    switch (c) {
        case JacobiClass::Stable: return "stable";
        case JacobiClass::Unstable: return "unstable";
        case JacobiClass::Marginal: return "marginal";
    }
    return "marginal";
}

Vec first_invariant(const VectorField& f, const TangentPoint& tp) {
    if (static_cast<int>(tp.x.size()) != f.dim || static_cast<int>(tp.y.size()) != f.dim)
        throw std::invalid_argument("first_invariant: tangent point dimensions do not match field");
    const Vec x_dot = field_eval(f, tp.x);
    const Mat j = field_jacobian(f, tp.x);
    Vec e(static_cast<size_t>(f.dim), 0.0);
    for (int i = 0; i < f.dim; ++i) {
        double acc = 0.0;
        for (int jj = 0; jj < f.dim; ++jj) {
            acc += -0.5 * (j(i, jj) - j(jj, i)) * tp.y[static_cast<size_t>(jj)];
            acc -= j(jj, i) * x_dot[static_cast<size_t>(jj)];
        }
        e[static_cast<size_t>(i)] = acc;
    }
    return e;
}

Vec first_invariant_from_parts(const Vec& g, const Mat& n_connection, const Vec& y) {
    const int n = n_connection.dim();
    Vec e(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 2.0 * g[static_cast<size_t>(i)];
        for (int jj = 0; jj < n; ++jj) acc -= n_connection(i, jj) * y[static_cast<size_t>(jj)];
        e[static_cast<size_t>(i)] = acc;
    }
    return e;
}

Mat curvature_matrix_E(const VectorField& f, const TangentPoint& tp) {
    if (static_cast<int>(tp.x.size()) != f.dim || static_cast<int>(tp.y.size()) != f.dim)
        throw std::invalid_argument("curvature_matrix_E: tangent point dimensions do not match field");
    const int n = f.dim;
    const Vec x_dot = field_eval(f, tp.x);
    const Mat j = field_jacobian(f, tp.x);
    const std::vector<Mat> h = field_hessians(f, tp.x);

    Mat a(n);  // A = J - J^t
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a(i, k) = j(i, k) - j(k, i);

    Mat e(n);
    for (int i = 0; i < n; ++i) {
        for (int jj = 0; jj < n; ++jj) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                acc += -0.5 *
                       (h[static_cast<size_t>(i)](jj, k) - h[static_cast<size_t>(k)](i, jj)) *
                       tp.y[static_cast<size_t>(k)];
                acc -= h[static_cast<size_t>(k)](i, jj) * x_dot[static_cast<size_t>(k)];
                acc -= j(k, i) * j(k, jj);
                acc -= 0.25 * a(i, k) * a(k, jj);
            }
            e(i, jj) = acc;
        }
    }
    return e;
}

Mat deviation_curvature(const VectorField& f, const TangentPoint& tp) {
    const std::vector<Mat> r = torsions_lagrange(f, tp.x);
    Mat p = curvature_matrix_E(f, tp);
    const int n = f.dim;
    for (int k = 0; k < n; ++k) {
        const double yk = tp.y[static_cast<size_t>(k)];
        if (yk == 0.0) continue;
        const Mat& rk = r[static_cast<size_t>(k)];
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) p(i, jj) += rk(i, jj) * yk;
    }
    return p;
}

StabilityVerdict classify_deviation(const Mat& p, double eps_scale) {
    StabilityVerdict v;
    v.spectrum = eigenvalues(p);
    v.max_real_part = v.spectrum.max_real_part();
    v.margin = std::fabs(v.max_real_part);
    const double band = eps_scale * (1.0 + p.norm());
    if (v.max_real_part < -band)
        v.classification = JacobiClass::Stable;
    else if (v.max_real_part > band)
        v.classification = JacobiClass::Unstable;
    else
        v.classification = JacobiClass::Marginal;
    return v;
}

StabilityVerdict jacobi_stability(const VectorField& f, const TangentPoint& tp, double eps_scale) {
    return classify_deviation(deviation_curvature(f, tp), eps_scale);
}

} // namespace lhgeom

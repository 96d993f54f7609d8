#include "lhgeom/lagrange.hpp"

#include <cmath>
#include <string>

namespace lhgeom {

namespace {

void require_tangent(const VectorField& f, const TangentPoint& tp, const char* op) {
    if (static_cast<int>(tp.x.size()) != f.dim || static_cast<int>(tp.y.size()) != f.dim)
        throw std::invalid_argument(std::string(op) + ": tangent point dimensions (" +
                                    std::to_string(tp.x.size()) + ", " + std::to_string(tp.y.size()) +
                                    ") do not match field dimension " + std::to_string(f.dim));
}

} // namespace

double lagrangian(const VectorField& f, const TangentPoint& tp) {
    require_tangent(f, tp, "lagrangian");
    const Vec x_dot = field_eval(f, tp.x);
    double l = 0.0;
    for (int i = 0; i < f.dim; ++i) {
        const double d = tp.y[static_cast<size_t>(i)] - x_dot[static_cast<size_t>(i)];
        l += d * d;
    }
    return l;
}

Vec semispray(const VectorField& f, const TangentPoint& tp) {
    require_tangent(f, tp, "semispray");
    const Vec x_dot = field_eval(f, tp.x);
    const Mat j = field_jacobian(f, tp.x);
    Vec g(static_cast<size_t>(f.dim), 0.0);
    for (int k = 0; k < f.dim; ++k) {
        double acc = 0.0;
        for (int jj = 0; jj < f.dim; ++jj) {
            acc += (j(k, jj) - j(jj, k)) * tp.y[static_cast<size_t>(jj)];
            acc += j(jj, k) * x_dot[static_cast<size_t>(jj)];
        }
        g[static_cast<size_t>(k)] = -0.5 * acc;
    }
    return g;
}

Mat connection_lagrange(const VectorField& f, const Vec& x) {
    const Mat j = field_jacobian(f, x);
    Mat n(j.dim());
    for (int i = 0; i < j.dim(); ++i) {
        for (int k = i + 1; k < j.dim(); ++k) {
            const double v = -0.5 * (j(i, k) - j(k, i));
            n(i, k) = v;
            n(k, i) = -v;
        }
    }
    return n;
}

std::vector<Mat> torsions_lagrange(const VectorField& f, const Vec& x) {
    const std::vector<Mat> h = field_hessians(f, x);
    const int n = f.dim;
    std::vector<Mat> r(static_cast<size_t>(n), Mat(n));
    for (int k = 0; k < n; ++k) {
        Mat& rk = r[static_cast<size_t>(k)];
        for (int i = 0; i < n; ++i) {
            for (int jj = i + 1; jj < n; ++jj) {
                const double v =
                    -0.5 * (h[static_cast<size_t>(i)](jj, k) - h[static_cast<size_t>(jj)](i, k));
                rk(i, jj) = v;
                rk(jj, i) = -v;
            }
        }
    }
    return r;
}

double yang_mills_energy(const Mat& n_connection) {
    // F = -N, so F F^t = N N^t; the sign never reaches the trace.
    const Mat prod = n_connection * n_connection.transposed();
    return 0.5 * prod.trace();
}

double yang_mills_energy(const VectorField& f, const Vec& x) {
    return yang_mills_energy(connection_lagrange(f, x));
}

double yang_mills_pair_sum(const Mat& n_connection) {
    double s = 0.0;
    for (int i = 0; i < n_connection.dim(); ++i)
        for (int j = i + 1; j < n_connection.dim(); ++j) s += n_connection(i, j) * n_connection(i, j);
    return s;
}

LagrangeGeometry lagrange_geometry(const VectorField& f, const TangentPoint& tp) {
    LagrangeGeometry g;
    g.L = lagrangian(f, tp);
    g.G = semispray(f, tp);
    g.N = connection_lagrange(f, tp.x);
    g.R = torsions_lagrange(f, tp.x);
    g.EYM = yang_mills_energy(g.N);
    return g;
}

std::vector<Vec> euler_lagrange_residual(const VectorField& f, const std::vector<double>& times,
                                         const std::vector<Vec>& states) {
    if (times.size() != states.size())
        throw std::invalid_argument("euler_lagrange_residual: times/states size mismatch");
    if (times.size() < 3)
        throw std::invalid_argument("euler_lagrange_residual: need at least 3 samples, got " +
                                    std::to_string(times.size()));
    const size_t m = times.size();
    const double dt = times[1] - times[0];
    if (dt <= 0.0) throw std::invalid_argument("euler_lagrange_residual: non-increasing times");

    std::vector<Vec> residuals;
    residuals.reserve(m - 2);
    for (size_t s = 1; s + 1 < m; ++s) {
        const Vec& prev = states[s - 1];
        const Vec& cur = states[s];
        const Vec& next = states[s + 1];
        TangentPoint tp;
        tp.x = cur;
        tp.y.resize(cur.size());
        Vec accel(cur.size());
        for (size_t i = 0; i < cur.size(); ++i) {
            tp.y[i] = (next[i] - prev[i]) / (2.0 * dt);
            accel[i] = (next[i] - 2.0 * cur[i] + prev[i]) / (dt * dt);
        }
        const Vec g = semispray(f, tp);
        Vec res(cur.size());
        for (size_t i = 0; i < cur.size(); ++i) res[i] = accel[i] + 2.0 * g[i];
        residuals.push_back(std::move(res));
    }
    return residuals;
}

} // namespace lhgeom

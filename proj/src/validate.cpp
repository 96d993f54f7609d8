#include "lhgeom/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "lhgeom/errors.hpp"
#include "lhgeom/fd.hpp"
#include "lhgeom/hamilton.hpp"
#include "lhgeom/integrate.hpp"
#include "lhgeom/lagrange.hpp"

namespace lhgeom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Step for differencing a quantity that is itself a finite difference.
// The inner difference carries roundoff ~ eps*|f|/h, so the combined
// estimator balances at h ~ cbrt(eps) * scale, much larger than the
// single-difference default.
double stacked_fd_step(const Vec& x) {
    double linf = 0.0;
    for (double v : x) linf = std::max(linf, std::abs(v));
    return std::max(1e-4, std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + linf));
}

// Failure ratio used to keep the worst offender when the same check runs
// at many sample points. Exact checks (tol 0) map to 0 or infinity.
double fail_ratio(const CheckResult& c) {
    if (c.tol > 0.0) return c.worst / c.tol;
    return c.worst > 0.0 ? kInf : 0.0;
}

} // namespace

Mat curvature_delta_oracle(const VectorField& f, const TangentPoint& tp, double h) {
    const Vec& x = tp.x;
    const Vec& y = tp.y;
    const double hx = h > 0.0 ? h : default_fd_step(x);
    const double hy = h > 0.0 ? h : default_fd_step(y);
    const VectorFn wrt_x = [&f, &y](const Vec& q) { return first_invariant(f, {q, y}); };
    const VectorFn wrt_y = [&f, &x](const Vec& q) { return first_invariant(f, {x, q}); };
    const Mat dx = fd_jacobian(wrt_x, x, hx);
    const Mat dy = fd_jacobian(wrt_y, y, hy);
    return dx - dy * connection_lagrange(f, x);
}

Mat deviation_curvature_fd(const VectorField& f, const TangentPoint& tp, double h) {
    const VectorField bare = without_analytic_derivatives(f);
    const double step = h > 0.0 ? h : stacked_fd_step(tp.x);
    Mat p = curvature_delta_oracle(bare, tp, step);
    const MatrixFn conn = [&bare](const Vec& q) { return connection_lagrange(bare, q); };
    for (int k = 0; k < f.dim; ++k) {
        const double yk = tp.y[static_cast<size_t>(k)];
        if (yk == 0.0) continue;
        p += yk * fd_partial_matrix(conn, tp.x, k, step);
    }
    return p;
}

std::vector<CheckResult> point_checks(const VectorField& f, const TangentPoint& tp) {
    const Vec& x = tp.x;
    const Mat j = field_jacobian(f, x);
    const Mat jt = j.transposed();
    const std::vector<Mat> hess = field_hessians(f, x);
    const double step = default_fd_step(x);

    std::vector<CheckResult> out;
    const auto add = [&out](const char* name, double worst, double tol) {
        out.push_back({name, worst, tol, worst <= tol});
    };

    add("jacobian vs finite differences", (j - fd_jacobian(f.eval, x, step)).max_abs(), 1e-6);
    {
        double worst = 0.0;
        for (int k = 0; k < f.dim; ++k) {
            const ScalarFn component = [&f, k](const Vec& q) {
                return field_eval(f, q)[static_cast<size_t>(k)];
            };
            worst = std::max(
                worst,
                (hess[static_cast<size_t>(k)] - fd_hessian_component(component, x, step)).max_abs());
        }
        add("hessians vs finite differences", worst, 1e-4);
    }

    const Mat n = connection_lagrange(f, x);
    const Mat nh = connection_hamilton(f, x);
    add("tangent connection skew", (n + n.transposed()).max_abs(), 0.0);
    add("tangent connection -2N = J - Jt", (-2.0 * n - (j - jt)).max_abs(), 1e-12);
    add("cotangent connection symmetric", (nh - nh.transposed()).max_abs(), 0.0);
    add("cotangent connection N_H = J + Jt", (nh - (j + jt)).max_abs(), 1e-12);

    const std::vector<Mat> r = torsions_lagrange(f, x);
    const std::vector<Mat> rh = torsions_hamilton(f, x);
    {
        double worst = 0.0;
        const MatrixFn conn = [&f](const Vec& q) { return connection_lagrange(f, q); };
        for (int k = 0; k < f.dim; ++k)
            worst = std::max(
                worst, (r[static_cast<size_t>(k)] - fd_partial_matrix(conn, x, k, step)).max_abs());
        add("torsions vs finite differences", worst, 1e-6);
    }
    {
        double worst = 0.0;
        for (int k = 0; k < f.dim; ++k)
            worst = std::max(
                worst, (rh[static_cast<size_t>(k)] + 2.0 * r[static_cast<size_t>(k)]).max_abs());
        add("torsion relation R_H + 2R", worst, 1e-12);
    }

    const double eym = yang_mills_energy(n);
    add("Yang-Mills trace vs pair sum", std::abs(eym - yang_mills_pair_sum(n)),
        1e-12 * (1.0 + eym));

    {
        const Vec e1 = first_invariant(f, tp);
        const Vec e2 = first_invariant_from_parts(semispray(f, tp), n, tp.y);
        double worst = 0.0, scale = 0.0;
        for (size_t i = 0; i < e1.size(); ++i) {
            worst = std::max(worst, std::abs(e1[i] - e2[i]));
            scale = std::max(scale, std::abs(e1[i]));
        }
        add("first invariant two-path", worst, 1e-12 * (1.0 + scale));
    }

    add("curvature E vs delta oracle",
        (curvature_matrix_E(f, tp) - curvature_delta_oracle(f, tp)).max_abs(), 1e-5);
    add("deviation P vs finite differences",
        (deviation_curvature(f, tp) - deviation_curvature_fd(f, tp)).max_abs(), 1e-4);
    return out;
}

std::vector<CheckResult> run_validation(const ModelParams& params, const Vec& x0) {
    const VectorField f = covid_vector_field(params);
    if (static_cast<int>(x0.size()) != kCovidDim)
        throw std::invalid_argument("run_validation: state must have 6 components");

    // Deterministic sample battery at the scale of the supplied state:
    // the state itself (on-shell and zero velocity) plus random states
    // with random velocities.
    double scale = 1.0;
    for (double v : x0) scale = std::max(scale, std::abs(v));
    std::mt19937 rng(20250818u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<TangentPoint> points;
    points.push_back({x0, field_eval(f, x0)});
    points.push_back({x0, Vec(static_cast<size_t>(kCovidDim), 0.0)});
    for (int s = 0; s < 5; ++s) {
        Vec x(static_cast<size_t>(kCovidDim)), y(static_cast<size_t>(kCovidDim));
        for (double& v : x) v = scale * (1.0 - unit(rng));  // uniform in (0, scale]
        for (double& v : y) v = scale * (2.0 * unit(rng) - 1.0);
        points.push_back({x, field_eval(f, x)});
        points.push_back({std::move(x), std::move(y)});
    }

    std::vector<CheckResult> agg;
    bool evaluable = true;
    for (const TangentPoint& tp : points) {
        std::vector<CheckResult> local;
        try {
            local = point_checks(f, tp);
        } catch (const NumericError&) {
            evaluable = false;
            continue;
        }
        if (agg.empty()) {
            agg = std::move(local);
            continue;
        }
        for (size_t i = 0; i < local.size(); ++i)
            if (fail_ratio(local[i]) > fail_ratio(agg[i])) agg[i] = local[i];
    }
    agg.push_back({"pointwise oracle evaluation", evaluable ? 0.0 : kInf, 0.0, evaluable});

    // Trajectory-level checks. A numerical blow-up counts as a failure of
    // the individual check, not of the suite.
    const auto guarded = [&agg](const char* name, double tol, const std::function<double()>& run) {
        CheckResult c{name, kInf, tol, false};
        try {
            c.worst = run();
            c.pass = c.worst <= tol;
        } catch (const NumericError&) {
        }
        agg.push_back(std::move(c));
    };

    const RateFn dead = [params](const Vec& x) { return deceased_rate(params, x); };
    const auto drift = [](const Trajectory& tr) {
        const double total0 = covid_total(tr.states.front()) + tr.deceased.front();
        double worst = 0.0;
        for (size_t i = 0; i < tr.states.size(); ++i)
            worst = std::max(worst,
                             std::abs(covid_total(tr.states[i]) + tr.deceased[i] - total0));
        return worst / total0;
    };
    guarded("conservation drift, fixed step", 1e-8,
            [&] { return drift(integrate_rk4(f, dead, x0, 0.0, 0.0, 10.0, 0.01)); });
    guarded("conservation drift, adaptive", 1e-8, [&] {
        return drift(integrate_adaptive(f, dead, x0, 0.0, 0.0, 10.0, 1e-8, 1e-10, 0.1));
    });
    guarded("Euler-Lagrange residual", 1e-3, [&] {
        const Trajectory tr = integrate_rk4(f, dead, x0, 0.0, 0.0, 1.0, 0.01);
        double worst = 0.0;
        for (const Vec& res : euler_lagrange_residual(f, tr.times, tr.states))
            for (double v : res) worst = std::max(worst, std::abs(v));
        return worst;
    });
    return agg;
}

bool all_pass(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string format_check_table(const std::vector<CheckResult>& checks) {
    std::string out;
    char line[160];
    const CheckResult* worst_offender = nullptr;
    int failed = 0;
    for (const CheckResult& c : checks) {
        std::snprintf(line, sizeof line, "%s  %-38s  worst %11.4e  tol %11.4e\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.worst, c.tol);
        out += line;
        if (!c.pass) {
            ++failed;
            if (worst_offender == nullptr || fail_ratio(c) > fail_ratio(*worst_offender))
                worst_offender = &c;
        }
    }
    if (failed == 0) {
        std::snprintf(line, sizeof line, "RESULT: all %zu checks passed\n", checks.size());
    } else {
        std::snprintf(line, sizeof line,
                      "RESULT: %d of %zu checks failed; worst offender: %s (worst %.4e, tol %.4e)\n",
                      failed, checks.size(), worst_offender->name.c_str(), worst_offender->worst,
                      worst_offender->tol);
    }
    out += line;
    return out;
}

} // namespace lhgeom

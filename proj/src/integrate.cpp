#include "lhgeom/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lhgeom {

namespace {

// Augmented right-hand side over (x, D); the deceased component is
// integrated alongside x so that the conservation identity N + D = const
// is testable pointwise on samples.
struct Augmented {
    const VectorField& f;
    const RateFn& deceased;
    int dim;  // f.dim + 1

    Vec operator()(const Vec& z, double t_for_errors) const {
        Vec x(z.begin(), z.end() - 1);
        Vec out(static_cast<size_t>(dim));
        try {
            const Vec dx = field_eval(f, x);
            std::copy(dx.begin(), dx.end(), out.begin());
            out[static_cast<size_t>(dim - 1)] = deceased(x);
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) + " (at t = " + std::to_string(t_for_errors) +
                               ")");
        }
        for (double v : out)
            if (!std::isfinite(v))
                throw NumericError("integrate: non-finite derivative at t = " +
                                   std::to_string(t_for_errors));
        return out;
    }
};

void check_state_finite(const Vec& z, double t) {
    for (double v : z)
        if (!std::isfinite(v))
            throw NumericError("integrate: non-finite state at t = " + std::to_string(t));
}

// Once per compartment, record an excursion below -1e-9 * N(0). These are
// tolerated (no clamping: clamping would break the conservation identity
// used as the integrator's acceptance test).
class NegativityMonitor {
public:
    explicit NegativityMonitor(double n0) : threshold_(-1e-9 * std::fabs(n0)), seen_(16, false) {}

    void observe(const Vec& z, double t, std::vector<std::string>& warnings) {
        for (size_t i = 0; i + 1 < z.size(); ++i) {
            if (z[i] < threshold_ && !seen_[i]) {
                seen_[i] = true;
                warnings.push_back("compartment " + std::to_string(i + 1) + " fell to " +
                                   std::to_string(z[i]) + " at t = " + std::to_string(t));
            }
        }
    }

private:
    double threshold_;
    std::vector<bool> seen_;
};

double component_sum(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

void validate_span(const Vec& x0, double t0, double t1) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must be > t0");
    for (double v : x0)
        if (!std::isfinite(v)) throw std::invalid_argument("integrate: non-finite initial state");
}

// Output grid t0 + i*dt; a trailing partial step is added when dt does not
// divide the span (within a 1e-9 relative slack).
std::vector<double> uniform_grid(double t0, double t1, double dt) {
    const double span = t1 - t0;
    const long long n = std::llround(span / dt);
    std::vector<double> ts;
    const double slack = 1e-9 * std::max(1.0, std::fabs(span));
    if (n >= 1 && std::fabs(static_cast<double>(n) * dt - span) <= slack) {
        ts.reserve(static_cast<size_t>(n) + 1);
        for (long long i = 0; i < n; ++i) ts.push_back(t0 + static_cast<double>(i) * dt);
        ts.push_back(t1);
    } else {
        const long long full = static_cast<long long>(std::floor(span / dt));
        ts.reserve(static_cast<size_t>(full) + 2);
        for (long long i = 0; i <= full; ++i) ts.push_back(t0 + static_cast<double>(i) * dt);
        if (ts.back() < t1 - slack)
            ts.push_back(t1);
        else
            ts.back() = t1;
    }
    return ts;
}

Vec axpy(const Vec& y, double a, const Vec& x) {
    Vec r(y.size());
    for (size_t i = 0; i < y.size(); ++i) r[i] = y[i] + a * x[i];
    return r;
}

} // namespace

Trajectory integrate_rk4(const VectorField& f, const RateFn& deceased, const Vec& x0, double d0,
                         double t0, double t1, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_rk4: dt must be > 0");
    validate_span(x0, t0, t1);

    const int adim = f.dim + 1;
    Augmented rhs{f, deceased, adim};
    Vec z(x0);
    z.push_back(d0);
    check_state_finite(z, t0);

    Trajectory traj;
    NegativityMonitor monitor(component_sum(x0));
    const std::vector<double> ts = uniform_grid(t0, t1, dt);
    traj.times.reserve(ts.size());
    traj.states.reserve(ts.size());
    traj.deceased.reserve(ts.size());

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.emplace_back(z.begin(), z.end() - 1);
        traj.deceased.push_back(z.back());
        monitor.observe(z, t, traj.warnings);
    };
    record(ts.front());

    for (size_t s = 0; s + 1 < ts.size(); ++s) {
        const double t = ts[s];
        const double h = ts[s + 1] - t;
        const Vec k1 = rhs(z, t);
        const Vec k2 = rhs(axpy(z, 0.5 * h, k1), t + 0.5 * h);
        const Vec k3 = rhs(axpy(z, 0.5 * h, k2), t + 0.5 * h);
        const Vec k4 = rhs(axpy(z, h, k3), t + h);
        for (size_t i = 0; i < z.size(); ++i)
            z[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        check_state_finite(z, ts[s + 1]);
        record(ts[s + 1]);
    }
    return traj;
}

namespace {

// Dormand-Prince coefficients (5th-order solution with embedded 4th-order
// error estimate, first-same-as-last).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

Vec hermite(const Vec& y0, const Vec& f0, const Vec& y1, const Vec& f1, double h, double theta) {
    // Cubic Hermite interpolant on [0, 1] in theta.
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + theta;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    Vec r(y0.size());
    for (size_t i = 0; i < y0.size(); ++i)
        r[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    return r;
}

} // namespace

Trajectory integrate_adaptive(const VectorField& f, const RateFn& deceased, const Vec& x0, double d0,
                              double t0, double t1, double rtol, double atol, double sample_dt) {
    if (!(rtol > 0.0) || !(atol > 0.0))
        throw std::invalid_argument("integrate_adaptive: tolerances must be > 0");
    if (!(sample_dt > 0.0)) throw std::invalid_argument("integrate_adaptive: sample_dt must be > 0");
    validate_span(x0, t0, t1);

    const int adim = f.dim + 1;
    Augmented rhs{f, deceased, adim};
    const double span = t1 - t0;
    const double h_min = 1e-12 * span;

    Vec y(x0);
    y.push_back(d0);
    check_state_finite(y, t0);

    Trajectory traj;
    NegativityMonitor monitor(component_sum(x0));
    const std::vector<double> samples = uniform_grid(t0, t1, sample_dt);
    size_t next_sample = 0;

    auto record = [&](double t, const Vec& z) {
        traj.times.push_back(t);
        traj.states.emplace_back(z.begin(), z.end() - 1);
        traj.deceased.push_back(z.back());
        monitor.observe(z, t, traj.warnings);
    };
    record(samples[next_sample++], y);

    double t = t0;
    double h = span / 100.0;
    Vec k1 = rhs(y, t);

    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < h_min)
            throw NumericError("integrate_adaptive: step size underflow at t = " + std::to_string(t));

        const Vec y2 = axpy(y, h * a21, k1);
        const Vec k2 = rhs(y2, t + c2 * h);
        Vec tmp(y.size());
        for (size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const Vec k3 = rhs(tmp, t + c3 * h);
        for (size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Vec k4 = rhs(tmp, t + c4 * h);
        for (size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Vec k5 = rhs(tmp, t + c5 * h);
        for (size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const Vec k6 = rhs(tmp, t + h);
        Vec y_next(y.size());
        for (size_t i = 0; i < y.size(); ++i)
            y_next[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const Vec k7 = rhs(y_next, t + h);

        double err = 0.0;
        for (size_t i = 0; i < y.size(); ++i) {
            const double ei =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = atol + rtol * std::max(std::fabs(y[i]), std::fabs(y_next[i]));
            const double q = ei / scale;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(y.size()));

        if (err <= 1.0) {
            const double t_next = t + h;
            // Dense output for every sample time inside (t, t_next].
            while (next_sample < samples.size() && samples[next_sample] <= t_next + 1e-14 * span) {
                const double ts = std::min(samples[next_sample], t_next);
                const double theta = (ts - t) / h;
                Vec zs = (theta >= 1.0) ? y_next : hermite(y, k1, y_next, k7, h, theta);
                record(samples[next_sample], zs);
                ++next_sample;
            }
            t = t_next;
            y = y_next;
            k1 = k7;  // first-same-as-last
            check_state_finite(y, t);
        }

        const double factor =
            (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= factor;
    }

    // Guard against a dangling final sample lost to roundoff.
    while (next_sample < samples.size()) {
        record(samples[next_sample], y);
        ++next_sample;
    }
    return traj;
}

} // namespace lhgeom

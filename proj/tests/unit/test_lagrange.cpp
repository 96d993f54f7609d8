#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lhgeom/covid.hpp"
#include "lhgeom/integrate.hpp"
#include "lhgeom/lagrange.hpp"
#include "test_util.hpp"

using namespace lhgeom;

namespace {

VectorField zero_field() {
    return {6, [](const Vec& x) { return Vec(x.size(), 0.0); },
            [](const Vec&) { return Mat(6); },
            [](const Vec&) { return std::vector<Mat>(6, Mat(6)); }};
}

VectorField linear_field(const Mat& a) {
    const int n = a.dim();
    return {n, [a](const Vec& x) { return a * x; }, [a](const Vec&) { return a; },
            [n](const Vec&) { return std::vector<Mat>(static_cast<size_t>(n), Mat(n)); }};
}

} // namespace

TEST_CASE("lagrangian vanishes on the field direction and counts squared offsets") {
    const VectorField f = covid_vector_field(testutil::baseline_params());
    const Vec x0 = testutil::baseline_state();
    const Vec xdot = field_eval(f, x0);

    CHECK(lagrangian(f, {x0, xdot}) == 0.0);

    Vec y1 = xdot;
    y1[0] += 1.0;
    CHECK(lagrangian(f, {x0, y1}) == 1.0);

    CHECK(std::fabs(lagrangian(f, {x0, Vec(6, 0.0)}) - 218.295) <= 1e-12);
}

TEST_CASE("semispray of the zero field vanishes") {
    const VectorField f = zero_field();
    const Vec g = semispray(f, {Vec(6, 1.0), Vec(6, 2.0)});
    for (double v : g) CHECK(v == 0.0);
}

TEST_CASE("semispray of a symmetric linear field drops the rotational part") {
    Mat a(3);
    a(0, 0) = 2.0;
    a(0, 1) = a(1, 0) = -1.0;
    a(1, 2) = a(2, 1) = 0.5;
    a(2, 2) = 1.5;
    const VectorField f = linear_field(a);
    const Vec x = {1.0, -2.0, 0.5};
    const Vec y = {3.0, 0.0, -1.0};

    // J symmetric kills the skew part, leaving G = -1/2 A(Ax) for any y.
    const Vec g = semispray(f, {x, y});
    const Vec expect = a * (a * x);
    for (size_t i = 0; i < 3; ++i) CHECK(std::fabs(g[i] + 0.5 * expect[i]) <= 1e-12);
}

TEST_CASE("connection is exactly skew and matches the jacobian identity") {
    std::mt19937 rng(808u);
    const ModelParams p = testutil::baseline_params();
    const VectorField f = covid_vector_field(p);
    for (int trial = 0; trial < 25; ++trial) {
        const Vec x = testutil::random_state(rng, 1e-3, 1e4);
        const Mat n = connection_lagrange(f, x);
        const Mat j = covid_jacobian(p, x);
        CHECK((n + n.transposed()).max_abs() == 0.0);
        CHECK((-2.0 * n - (j - j.transposed())).max_abs() == 0.0);
        for (int i = 0; i < 6; ++i) CHECK(n(i, i) == 0.0);
    }
}

TEST_CASE("frozen connection entries") {
    const VectorField f = covid_vector_field(testutil::baseline_params());
    const Mat n0 = connection_lagrange(f, testutil::baseline_state());
    CHECK(n0(2, 4) == 0.025);

    // With no susceptibles or exposed the connection is six rate constants.
    const Mat n1 = connection_lagrange(f, testutil::recovered_state());
    CHECK(std::fabs(n1(1, 2) - 0.05) <= 1e-12);
    CHECK(std::fabs(n1(1, 3) - 0.05) <= 1e-12);
    CHECK(std::fabs(n1(2, 4) - 0.025) <= 1e-12);
    CHECK(std::fabs(n1(2, 5) - 0.05) <= 1e-12);
    CHECK(std::fabs(n1(3, 5) - 0.075) <= 1e-12);
    CHECK(std::fabs(n1(4, 5) - 0.06) <= 1e-12);
    for (int i = 0; i < 6; ++i) {
        CHECK(n1(0, i) == 0.0);
        CHECK(n1(i, 0) == 0.0);
    }
    CHECK(n1(1, 4) == 0.0);
    CHECK(n1(2, 3) == 0.0);
    CHECK(n1(3, 4) == 0.0);
}

TEST_CASE("torsions are skew, block-sparse and match finite differences") {
    std::mt19937 rng(606u);
    const ModelParams p = testutil::baseline_params();
    const VectorField f = covid_vector_field(p);

    const Vec x0 = testutil::baseline_state();
    const std::vector<Mat> r = torsions_lagrange(f, x0);
    REQUIRE(r.size() == 6);
    for (const Mat& rk : r) CHECK((rk + rk.transposed()).max_abs() == 0.0);

    // Only the first two field components are nonlinear, so torsion
    // entries with both indices in the linear block vanish.
    for (int k = 0; k < 6; ++k)
        for (int i = 2; i < 6; ++i)
            for (int j = 2; j < 6; ++j) CHECK(r[static_cast<size_t>(k)](i, j) == 0.0);

    const MatrixFn conn = [&f](const Vec& q) { return connection_lagrange(f, q); };
    for (int trial = 0; trial < 5; ++trial) {
        const Vec x = (trial == 0) ? x0 : testutil::random_state(rng, 1.0, 1e3);
        const std::vector<Mat> rx = torsions_lagrange(f, x);
        for (int k = 0; k < 6; ++k) {
            const Mat fd = fd_partial_matrix(conn, x, k, default_fd_step(x));
            CHECK((rx[static_cast<size_t>(k)] - fd).max_abs() <= 1e-6);
        }
    }
}

TEST_CASE("Yang-Mills energy identities and frozen value") {
    const VectorField f = covid_vector_field(testutil::baseline_params());

    const Mat n1 = connection_lagrange(f, testutil::recovered_state());
    const double trace_form = yang_mills_energy(n1);
    const double pair_form = yang_mills_pair_sum(n1);
    CHECK(std::fabs(trace_form - pair_form) <= 1e-15);
    CHECK(std::fabs(trace_form - 0.01735) <= 1e-12);
    CHECK(std::fabs(yang_mills_energy(f, testutil::recovered_state()) - 0.01735) <= 1e-12);

    CHECK(yang_mills_energy(zero_field(), Vec(6, 1.0)) == 0.0);

    std::mt19937 rng(404u);
    for (int trial = 0; trial < 25; ++trial) {
        const Vec x = testutil::random_state(rng, 1e-2, 1e4);
        const Mat n = connection_lagrange(f, x);
        const double a = yang_mills_energy(n);
        const double b = yang_mills_pair_sum(n);
        CHECK(std::fabs(a - b) <= 1e-12 * (1.0 + a));
        CHECK(a >= 0.0);
    }
}

TEST_CASE("bundled geometry agrees with the individual evaluations") {
    const VectorField f = covid_vector_field(testutil::baseline_params());
    const Vec x = testutil::baseline_state();
    const Vec y = field_eval(f, x);
    const LagrangeGeometry geo = lagrange_geometry(f, {x, y});

    CHECK(geo.L == lagrangian(f, {x, y}));
    const Vec g = semispray(f, {x, y});
    for (size_t i = 0; i < 6; ++i) CHECK(geo.G[i] == g[i]);
    CHECK((geo.N - connection_lagrange(f, x)).max_abs() == 0.0);
    CHECK(geo.EYM == yang_mills_energy(f, x));
    REQUIRE(geo.R.size() == 6);
}

TEST_CASE("tangent point dimension mismatches are rejected") {
    const VectorField f = covid_vector_field(testutil::baseline_params());
    CHECK_THROWS_AS(lagrangian(f, {Vec(5, 1.0), Vec(6, 0.0)}), std::invalid_argument);
    CHECK_THROWS_AS(semispray(f, {Vec(6, 1.0), Vec(3, 0.0)}), std::invalid_argument);
}

TEST_CASE("Euler-Lagrange residual input validation") {
    const VectorField f = covid_vector_field(testutil::baseline_params());
    CHECK_THROWS_AS(euler_lagrange_residual(f, {0.0, 0.1}, {Vec(6, 1.0), Vec(6, 1.0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(euler_lagrange_residual(f, {0.0, 0.1, 0.2}, {Vec(6, 1.0)}),
                    std::invalid_argument);
}

TEST_CASE("Euler-Lagrange residual is zero at an equilibrium") {
    const VectorField f = covid_vector_field(testutil::baseline_params());
    const Vec eq = {1000.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const std::vector<Vec> states(11, eq);
    std::vector<double> times(11);
    for (size_t i = 0; i < 11; ++i) times[i] = 0.1 * static_cast<double>(i);
    const std::vector<Vec> res = euler_lagrange_residual(f, times, states);
    REQUIRE(res.size() == 9);
    for (const Vec& r : res)
        for (double v : r) CHECK(v == 0.0);
}

TEST_CASE("Euler-Lagrange residual shrinks at second order along solutions") {
    const ModelParams p = testutil::baseline_params();
    const VectorField f = covid_vector_field(p);
    const RateFn dead = [&p](const Vec& x) { return deceased_rate(p, x); };
    const Vec x0 = testutil::baseline_state();

    auto max_residual = [&](double dt) {
        const Trajectory tr = integrate_rk4(f, dead, x0, 0.0, 0.0, 1.0, dt);
        double worst = 0.0;
        for (const Vec& r : euler_lagrange_residual(f, tr.times, tr.states))
            for (double v : r) worst = std::max(worst, std::fabs(v));
        return worst;
    };

    const double r1 = max_residual(0.01);
    const double r2 = max_residual(0.005);
    CHECK(r1 <= 1e-3);
    CHECK(r1 / r2 >= 3.0);
    CHECK(r1 / r2 <= 5.0);
}

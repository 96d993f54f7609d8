#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "lhgeom/covid.hpp"
#include "lhgeom/lagrange.hpp"
#include "lhgeom/surface.hpp"
#include "test_util.hpp"

using namespace lhgeom;

namespace {

ProjectionSpec sphere_spec(int count) {
    ProjectionSpec spec;
    spec.axes = {1, 2, 3};
    spec.reference = {0.0, 0.0, 0.0};
    spec.grid = {AxisRange{-2.0, 2.0, count}, AxisRange{-2.0, 2.0, count},
                 AxisRange{-2.0, 2.0, count}};
    spec.rho = 1.0;
    return spec;
}

const ScalarFn radius_sq = [](const Vec& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; };

// Undirected edge statistics of a triangle mesh: counts per edge and
// whether the two directed traversals cancel.
struct EdgeStats {
    std::map<std::pair<int, int>, int> undirected;
    std::map<std::pair<int, int>, int> directed;
    bool degenerate = false;

    explicit EdgeStats(const TriMesh& mesh) {
        for (const auto& t : mesh.triangles) {
            if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0]) degenerate = true;
            for (int s = 0; s < 3; ++s) {
                const int a = t[static_cast<size_t>(s)];
                const int b = t[static_cast<size_t>((s + 1) % 3)];
                ++undirected[{std::min(a, b), std::max(a, b)}];
                ++directed[{a, b}];
            }
        }
    }

    bool directed_once_each() const {
        for (const auto& [edge, count] : directed)
            if (count != 1) return false;
        return true;
    }
};

bool on_box_boundary(const ScalarGrid& grid, const std::array<double, 3>& v) {
    for (int s = 0; s < 3; ++s) {
        const AxisRange& g = grid.spec.grid[static_cast<size_t>(s)];
        const double span = g.max - g.min;
        if (std::fabs(v[static_cast<size_t>(s)] - g.min) <= 1e-12 * span) return true;
        if (std::fabs(v[static_cast<size_t>(s)] - g.max) <= 1e-12 * span) return true;
    }
    return false;
}

} // namespace

TEST_CASE("projection enumeration is lexicographic and complete") {
    const std::vector<std::array<int, 3>> all = enumerate_projections();
    REQUIRE(all.size() == 20);
    CHECK((all.front() == std::array<int, 3>{1, 2, 3}));
    CHECK((all.back() == std::array<int, 3>{4, 5, 6}));
    std::set<std::array<int, 3>> seen;
    for (size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i][0] < all[i][1]);
        CHECK(all[i][1] < all[i][2]);
        if (i > 0) CHECK(all[i - 1] < all[i]);
        seen.insert(all[i]);
    }
    CHECK(seen.size() == 20);
}

TEST_CASE("projection spec validation") {
    ProjectionSpec spec = sphere_spec(5);
    CHECK_NOTHROW(spec.validate(3));

    ProjectionSpec bad = spec;
    bad.axes = {1, 1, 2};
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);

    bad = spec;
    bad.axes = {1, 2, 7};
    CHECK_THROWS_AS(bad.validate(6), std::invalid_argument);

    bad = spec;
    bad.grid[1].count = 1;
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);

    bad = spec;
    bad.grid[2].min = bad.grid[2].max;
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);

    bad = spec;
    bad.rho = -0.5;
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);

    bad = spec;
    bad.tol = -1.0;
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);

    bad = spec;
    bad.reference = {0.0, 0.0};
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
}

TEST_CASE("grid sampling, indexing and coordinates") {
    ProjectionSpec spec = sphere_spec(3);
    const ScalarGrid grid = sample_scalar_grid(radius_sq, 3, spec);
    REQUIRE(grid.values.size() == 27);
    CHECK(grid.coord(0, 0) == -2.0);
    CHECK(grid.coord(0, 1) == 0.0);
    CHECK(grid.coord(0, 2) == 2.0);
    CHECK(grid.value(1, 1, 1) == 0.0);
    CHECK(grid.value(0, 0, 0) == 12.0);
    CHECK(grid.value(1, 1, 2) == 4.0);
    CHECK(grid.value_min == 0.0);
    CHECK(grid.value_max == 12.0);
}

TEST_CASE("marching cubes case hooks") {
    CHECK(mc_case_triangles(0).empty());
    CHECK(mc_case_triangles(255).empty());
    CHECK(mc_case_triangles(1).size() == 1);
    CHECK(mc_case_triangles(254).size() == 1);
    CHECK((mc_edge_corners(0) == std::array<int, 2>{0, 1}));
    CHECK((mc_corner_offset(6) == std::array<int, 3>{1, 1, 1}));
    CHECK_THROWS_AS(mc_case_triangles(-1), std::invalid_argument);
    CHECK_THROWS_AS(mc_case_triangles(256), std::invalid_argument);
    CHECK_THROWS_AS(mc_edge_corners(12), std::invalid_argument);
    CHECK_THROWS_AS(mc_corner_offset(8), std::invalid_argument);
}

TEST_CASE("case table uses exactly the sign-crossing edges") {
    for (int mask = 0; mask < 256; ++mask) {
        std::set<int> used;
        for (const auto& tri : mc_case_triangles(mask))
            for (int e : tri) {
                CHECK(e >= 0);
                CHECK(e < 12);
                used.insert(e);
            }
        std::set<int> crossing;
        for (int e = 0; e < 12; ++e) {
            const auto c = mc_edge_corners(e);
            const bool a = (mask & (1 << c[0])) != 0;
            const bool b = (mask & (1 << c[1])) != 0;
            if (a != b) crossing.insert(e);
        }
        CHECK(used == crossing);

        // Complementary masks need not triangulate alike: the ambiguous face
        // patterns resolve in favor of the inside corners, and complementing
        // the mask swaps which diagonal gets connected, which can change the
        // contour topology (two small polygons versus one large one). Only
        // the edge set is invariant.
    }
}

TEST_CASE("isosurface of a sphere converges to the exact radius") {
    for (int count : {17, 33}) {
        const ScalarGrid grid = sample_scalar_grid(radius_sq, 3, sphere_spec(count));
        const TriMesh mesh = extract_isosurface(grid, 1.0);
        CHECK(mesh.warnings.empty());
        REQUIRE(!mesh.vertices.empty());
        REQUIRE(!mesh.triangles.empty());

        const double h = 4.0 / static_cast<double>(count - 1);
        const double tol = 2.0 * h * h;
        for (const auto& v : mesh.vertices) {
            const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            CHECK(std::fabs(r - 1.0) <= tol);
        }
    }
}

TEST_CASE("sphere mesh is watertight with outward orientation") {
    const ScalarGrid grid = sample_scalar_grid(radius_sq, 3, sphere_spec(17));
    const TriMesh mesh = extract_isosurface(grid, 1.0);
    const EdgeStats stats(mesh);
    CHECK(!stats.degenerate);
    CHECK(stats.directed_once_each());
    // The sphere lies strictly inside the box, so the mesh is closed.
    for (const auto& [edge, count] : stats.undirected) CHECK(count == 2);

    // Normals point toward larger values, here radially outward.
    for (const auto& t : mesh.triangles) {
        const auto& a = mesh.vertices[static_cast<size_t>(t[0])];
        const auto& b = mesh.vertices[static_cast<size_t>(t[1])];
        const auto& c = mesh.vertices[static_cast<size_t>(t[2])];
        const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
        const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
        const double nx = uy * vz - uz * vy;
        const double ny = uz * vx - ux * vz;
        const double nz = ux * vy - uy * vx;
        const double cx = (a[0] + b[0] + c[0]) / 3.0;
        const double cy = (a[1] + b[1] + c[1]) / 3.0;
        const double cz = (a[2] + b[2] + c[2]) / 3.0;
        CHECK(nx * cx + ny * cy + nz * cz > 0.0);
    }
}

TEST_CASE("a wavy level set still stitches watertight") {
    ProjectionSpec spec;
    spec.axes = {1, 2, 3};
    spec.reference = {0.0, 0.0, 0.0};
    spec.grid = {AxisRange{-2.0, 2.0, 12}, AxisRange{-2.0, 2.0, 12}, AxisRange{-2.0, 2.0, 12}};
    const ScalarFn wavy = [](const Vec& x) {
        return std::sin(1.3 * x[0]) + std::cos(0.7 * x[1]) + std::sin(0.9 * x[2] + 0.4);
    };
    const ScalarGrid grid = sample_scalar_grid(wavy, 3, spec);
    const TriMesh mesh = extract_isosurface(grid, 0.5);
    REQUIRE(!mesh.triangles.empty());

    const EdgeStats stats(mesh);
    CHECK(!stats.degenerate);
    CHECK(stats.directed_once_each());
    for (const auto& [edge, count] : stats.undirected) {
        CHECK(count >= 1);
        CHECK(count <= 2);
        if (count == 1) {
            // Open edges are allowed only where the surface leaves the box.
            CHECK(on_box_boundary(grid, mesh.vertices[static_cast<size_t>(edge.first)]));
            CHECK(on_box_boundary(grid, mesh.vertices[static_cast<size_t>(edge.second)]));
        }
    }
}

TEST_CASE("level outside the sampled range yields an empty mesh and a warning") {
    const ScalarGrid grid = sample_scalar_grid(radius_sq, 3, sphere_spec(5));
    const TriMesh mesh = extract_isosurface(grid, 100.0);
    CHECK(mesh.vertices.empty());
    CHECK(mesh.triangles.empty());
    REQUIRE(mesh.triangles.empty());
    REQUIRE(!mesh.warnings.empty());
    CHECK(mesh.warnings[0].find("outside sampled value range") != std::string::npos);
}

TEST_CASE("energy grid around the fixture and refinement consistency") {
    const VectorField f = covid_vector_field(testutil::baseline_params());

    ProjectionSpec coarse;
    coarse.axes = {1, 2, 3};
    coarse.reference = testutil::baseline_state();
    coarse.grid = {AxisRange{100.0, 500.0, 3}, AxisRange{100.0, 500.0, 3},
                   AxisRange{100.0, 500.0, 3}};
    ProjectionSpec fine = coarse;
    for (auto& g : fine.grid) g.count = 5;

    const ScalarGrid gc = sample_energy_grid(f, coarse);
    const ScalarGrid gf = sample_energy_grid(f, fine);

    // Shared nodes must evaluate to bit-identical energies: refinement
    // never perturbs coordinates it keeps.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(gc.value(i, j, k) == gf.value(2 * i, 2 * j, 2 * k));
}

TEST_CASE("energy over a slice without susceptibles or exposed") {
    const ModelParams p = testutil::baseline_params();
    const VectorField f = covid_vector_field(p);

    ProjectionSpec spec;
    spec.axes = {3, 4, 5};
    spec.reference = testutil::recovered_state();
    spec.grid = {AxisRange{0.0, 100.0, 5}, AxisRange{0.0, 100.0, 5}, AxisRange{0.0, 100.0, 5}};
    const ScalarGrid grid = sample_energy_grid(f, spec);

    // With S = E = 0 the only state-dependent connection entry left is the
    // force-of-infection derivative u/(2N) between S and E; the rest are
    // the six constant rate entries summing to 0.01735.
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                const double is = grid.coord(0, i), ia = grid.coord(1, j), ih = grid.coord(2, k);
                const double u = p.beta_s * is + p.beta_a * ia + p.beta_h * ih;
                const double n = is + ia + ih + 100.0;
                const double extra = u / (2.0 * n);
                const double expect = 0.01735 + extra * extra;
                CHECK(std::fabs(grid.value(i, j, k) - expect) <= 1e-12);
            }
    CHECK(grid.value(0, 0, 0) == doctest::Approx(0.01735).epsilon(1e-12));

    // A level slightly above the idle-state energy slices a nonempty shell.
    const TriMesh mesh = extract_isosurface(grid, 0.0174);
    CHECK(!mesh.triangles.empty());
}

TEST_CASE("band point cloud membership") {
    const ScalarGrid grid = sample_scalar_grid(radius_sq, 3, sphere_spec(9));

    const std::vector<BandPoint> all = band_point_cloud(grid, 1.0, 1e9);
    CHECK(all.size() == grid.values.size());

    const std::vector<BandPoint> shell = band_point_cloud(grid, 1.0, 0.3);
    CHECK(!shell.empty());
    CHECK(shell.size() < all.size());
    for (const BandPoint& bp : shell) {
        CHECK(std::fabs(bp.value - 1.0) <= 0.3);
        const double r2 = bp.coords[0] * bp.coords[0] + bp.coords[1] * bp.coords[1] +
                          bp.coords[2] * bp.coords[2];
        CHECK(bp.value == r2);
    }

    // Zero tolerance keeps exact hits only; a linear ramp makes them easy
    // to place.
    ProjectionSpec ramp_spec = sphere_spec(3);
    ramp_spec.grid = {AxisRange{0.0, 2.0, 3}, AxisRange{0.0, 2.0, 3}, AxisRange{0.0, 2.0, 3}};
    const ScalarGrid ramp = sample_scalar_grid([](const Vec& x) { return x[0]; }, 3, ramp_spec);
    const std::vector<BandPoint> exact = band_point_cloud(ramp, 1.0, 0.0);
    CHECK(exact.size() == 9);
}

TEST_CASE("obj output is one-indexed and complete") {
    const ScalarGrid grid = sample_scalar_grid(radius_sq, 3, sphere_spec(5));
    const TriMesh mesh = extract_isosurface(grid, 1.0);
    std::ostringstream os;
    write_obj(os, mesh);
    const std::string text = os.str();

    size_t vlines = 0, flines = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) ++vlines;
        if (line.rfind("f ", 0) == 0) {
            ++flines;
            int a = 0, b = 0, c = 0;
            REQUIRE(std::sscanf(line.c_str(), "f %d %d %d", &a, &b, &c) == 3);
            for (int idx : {a, b, c}) {
                CHECK(idx >= 1);
                CHECK(idx <= static_cast<int>(mesh.vertices.size()));
            }
        }
    }
    CHECK(vlines == mesh.vertices.size());
    CHECK(flines == mesh.triangles.size());
}

TEST_CASE("grid sampling failures name the node") {
    const VectorField f = covid_vector_field(testutil::baseline_params());
    ProjectionSpec spec;
    spec.axes = {1, 2, 3};
    spec.reference = Vec(6, 0.0);
    spec.grid = {AxisRange{0.0, 10.0, 3}, AxisRange{0.0, 10.0, 3}, AxisRange{0.0, 10.0, 3}};
    CHECK_THROWS_AS(sample_energy_grid(f, spec), NumericError);
    try {
        sample_energy_grid(f, spec);
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("grid node 0,0,0") != std::string::npos);
    }
}

#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lhgeom/fd.hpp"
#include "lhgeom/field.hpp"

namespace lhgeom {

struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

// A 3-dimensional slice of state space: the three listed axes vary over a
// regular grid, the remaining coordinates are pinned to the reference
// state. Axis indices are 1-based (coordinate x^1 .. x^n), matching the
// user-facing CLI and sidecar files.
struct ProjectionSpec {
    std::array<int, 3> axes = {1, 2, 3};
    Vec reference;
    std::array<AxisRange, 3> grid;
    double rho = 0.0;  // level value, >= 0
    double tol = 0.0;  // band half-width for point-cloud output

    // Throws std::invalid_argument; dim is the state dimension.
    void validate(int dim) const;
};

struct ScalarGrid {
    ProjectionSpec spec;
    std::vector<double> values;  // ((i * c1) + j) * c2 + k
    double value_min = 0.0;
    double value_max = 0.0;

    double value(int i, int j, int k) const;
    // Grid coordinate along axis slot 0..2 at node index idx.
    double coord(int slot, int idx) const;
};

// All C(6,3) = 20 three-element subsets of {1..6} in lexicographic order.
std::vector<std::array<int, 3>> enumerate_projections();

// Evaluate an arbitrary scalar over the slice. Errors from the scalar are
// rethrown annotated with the failing node indices and coordinates.
ScalarGrid sample_scalar_grid(const ScalarFn& scalar, int dim, const ProjectionSpec& spec);

// The Yang-Mills energy of the field's Lagrangian connection over the slice.
ScalarGrid sample_energy_grid(const VectorField& f, const ProjectionSpec& spec);

struct TriMesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> triangles;  // 0-based vertex indices
    std::vector<std::string> warnings;
};

// Marching cubes over the sampled grid at level rho. Vertices are linearly
// interpolated along cell edges and deduplicated per grid edge, so shared
// cell faces stitch exactly. Triangles are wound so normals point toward
// increasing field values. A level outside the sampled range yields an
// empty mesh with a warning, not an error.
TriMesh extract_isosurface(const ScalarGrid& grid, double rho);

struct BandPoint {
    std::array<double, 3> coords;
    double value = 0.0;
};

// All grid nodes with |value - rho| <= tol.
std::vector<BandPoint> band_point_cloud(const ScalarGrid& grid, double rho, double tol);

// Wavefront OBJ: "v x y z" lines then "f i j k" lines with 1-based indices.
void write_obj(std::ostream& os, const TriMesh& mesh);

// Exposed for the exhaustive table self-checks in the test suite: the
// triangulation (as cell-edge index triples) of one of the 256 sign cases,
// and the corner pair of a cell edge.
const std::vector<std::array<int, 3>>& mc_case_triangles(int case_mask);
std::array<int, 2> mc_edge_corners(int edge);
std::array<int, 3> mc_corner_offset(int corner);

} // namespace lhgeom

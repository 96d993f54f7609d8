#include "lhgeom/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "lhgeom/lagrange.hpp"

namespace lhgeom {

namespace {

// Cube corners in the usual order: bit 0 of a case mask is corner 0, etc.
constexpr std::array<std::array<int, 3>, 8> kCorner = {{{0, 0, 0},
                                                        {1, 0, 0},
                                                        {1, 1, 0},
                                                        {0, 1, 0},
                                                        {0, 0, 1},
                                                        {1, 0, 1},
                                                        {1, 1, 1},
                                                        {0, 1, 1}}};

// The 12 cell edges as corner pairs.
constexpr std::array<std::array<int, 2>, 12> kEdge = {{{0, 1},
                                                       {1, 2},
                                                       {2, 3},
                                                       {3, 0},
                                                       {4, 5},
                                                       {5, 6},
                                                       {6, 7},
                                                       {7, 4},
                                                       {0, 4},
                                                       {1, 5},
                                                       {2, 6},
                                                       {3, 7}}};

// Each face as a corner cycle counterclockwise seen from outside the cube,
// plus the cell edge joining consecutive cycle corners.
struct Face {
    std::array<int, 4> corner;
    std::array<int, 4> edge;  // edge[s] joins corner[s] and corner[(s+1)%4]
};
constexpr std::array<Face, 6> kFace = {{
    {{0, 3, 2, 1}, {3, 2, 1, 0}},   // bottom, z = 0
    {{4, 5, 6, 7}, {4, 5, 6, 7}},   // top, z = 1
    {{0, 1, 5, 4}, {0, 9, 4, 8}},   // front, y = 0
    {{2, 3, 7, 6}, {2, 11, 6, 10}}, // back, y = 1
    {{0, 4, 7, 3}, {8, 7, 11, 3}},  // left, x = 0
    {{1, 2, 6, 5}, {1, 10, 5, 9}},  // right, x = 1
}};

// Directed contour segments per 4-bit face pattern (bit s = cycle corner s
// inside). Segments run with the inside region on the left as seen from
// outside the cube, expressed as (from slot, to slot) in the face's edge
// cycle. Ambiguous diagonal patterns keep the inside corners separated,
// a choice that depends only on the face's own sign pattern, so the two
// cells sharing a face always agree and the mesh stitches watertight.
const std::vector<std::array<int, 2>>& face_segments(int pattern) {
    static const std::array<std::vector<std::array<int, 2>>, 16> table = {{
        /* 0000 */ {},
        /* 0001 */ {{0, 3}},
        /* 0010 */ {{1, 0}},
        /* 0011 */ {{1, 3}},
        /* 0100 */ {{2, 1}},
        /* 0101 */ {{0, 3}, {2, 1}},
        /* 0110 */ {{2, 0}},
        /* 0111 */ {{2, 3}},
        /* 1000 */ {{3, 2}},
        /* 1001 */ {{0, 2}},
        /* 1010 */ {{1, 0}, {3, 2}},
        /* 1011 */ {{1, 2}},
        /* 1100 */ {{3, 1}},
        /* 1101 */ {{0, 1}},
        /* 1110 */ {{3, 0}},
        /* 1111 */ {},
    }};
    return table[static_cast<size_t>(pattern)];
}

// Builds the triangulation of one case mask by chaining the directed face
// segments into closed polygons and fanning each polygon. Polygon order is
// reversed at the end so triangle normals point toward values above the
// level (the contour walk produces the opposite winding).
std::vector<std::array<int, 3>> build_case(int mask) {
    std::array<int, 12> next;
    next.fill(-1);
    int crossed = 0;
    for (const Face& f : kFace) {
        int pattern = 0;
        for (int s = 0; s < 4; ++s)
            if (mask & (1 << f.corner[static_cast<size_t>(s)])) pattern |= 1 << s;
        for (const auto& seg : face_segments(pattern)) {
            const int from = f.edge[static_cast<size_t>(seg[0])];
            const int to = f.edge[static_cast<size_t>(seg[1])];
            if (next[static_cast<size_t>(from)] != -1)
                throw std::logic_error("marching cubes: duplicate segment source in case " +
                                       std::to_string(mask));
            next[static_cast<size_t>(from)] = to;
        }
    }
    for (int e = 0; e < 12; ++e) {
        const bool a = (mask & (1 << kEdge[static_cast<size_t>(e)][0])) != 0;
        const bool b = (mask & (1 << kEdge[static_cast<size_t>(e)][1])) != 0;
        if (a != b) ++crossed;
        if ((a != b) != (next[static_cast<size_t>(e)] != -1))
            throw std::logic_error("marching cubes: segment cover mismatch in case " +
                                   std::to_string(mask));
    }

    std::vector<std::array<int, 3>> tris;
    std::array<bool, 12> used;
    used.fill(false);
    for (int start = 0; start < 12; ++start) {
        if (next[static_cast<size_t>(start)] == -1 || used[static_cast<size_t>(start)]) continue;
        std::vector<int> poly;
        int e = start;
        do {
            poly.push_back(e);
            used[static_cast<size_t>(e)] = true;
            e = next[static_cast<size_t>(e)];
        } while (e != start && poly.size() <= 12);
        if (e != start)
            throw std::logic_error("marching cubes: open contour in case " + std::to_string(mask));
        std::reverse(poly.begin(), poly.end());
        for (size_t i = 1; i + 1 < poly.size(); ++i)
            tris.push_back({poly[0], poly[i], poly[i + 1]});
        crossed -= static_cast<int>(poly.size());
    }
    if (crossed != 0)
        throw std::logic_error("marching cubes: unclosed edges in case " + std::to_string(mask));
    return tris;
}

const std::array<std::vector<std::array<int, 3>>, 256>& case_table() {
    static const auto table = [] {
        std::array<std::vector<std::array<int, 3>>, 256> t;
        for (int mask = 0; mask < 256; ++mask) t[static_cast<size_t>(mask)] = build_case(mask);
        return t;
    }();
    return table;
}

} // namespace

const std::vector<std::array<int, 3>>& mc_case_triangles(int case_mask) {
    if (case_mask < 0 || case_mask > 255)
        throw std::invalid_argument("mc_case_triangles: case out of range");
    return case_table()[static_cast<size_t>(case_mask)];
}

std::array<int, 2> mc_edge_corners(int edge) {
    if (edge < 0 || edge >= 12) throw std::invalid_argument("mc_edge_corners: edge out of range");
    return kEdge[static_cast<size_t>(edge)];
}

std::array<int, 3> mc_corner_offset(int corner) {
    if (corner < 0 || corner >= 8)
        throw std::invalid_argument("mc_corner_offset: corner out of range");
    return kCorner[static_cast<size_t>(corner)];
}

void ProjectionSpec::validate(int dim) const {
    if (axes[0] == axes[1] || axes[0] == axes[2] || axes[1] == axes[2])
        throw std::invalid_argument("projection axes must be distinct");
    for (int a : axes)
        if (a < 1 || a > dim)
            throw std::invalid_argument("projection axis " + std::to_string(a) +
                                        " out of range 1.." + std::to_string(dim));
    if (static_cast<int>(reference.size()) != dim)
        throw std::invalid_argument("projection reference state must have " + std::to_string(dim) +
                                    " components");
    for (double v : reference)
        if (!std::isfinite(v)) throw std::invalid_argument("projection reference state not finite");
    for (int s = 0; s < 3; ++s) {
        const AxisRange& g = grid[static_cast<size_t>(s)];
        if (g.count < 2)
            throw std::invalid_argument("grid count along slot " + std::to_string(s + 1) +
                                        " must be >= 2");
        if (!(g.min < g.max))
            throw std::invalid_argument("grid range along slot " + std::to_string(s + 1) +
                                        " must satisfy min < max");
    }
    if (!(rho >= 0.0)) throw std::invalid_argument("level rho must be >= 0");
    if (tol < 0.0) throw std::invalid_argument("band tol must be >= 0");
}

double ScalarGrid::value(int i, int j, int k) const {
    const int c1 = spec.grid[1].count, c2 = spec.grid[2].count;
    return values[static_cast<size_t>((i * c1 + j) * c2 + k)];
}

double ScalarGrid::coord(int slot, int idx) const {
    const AxisRange& g = spec.grid[static_cast<size_t>(slot)];
    return g.min + (g.max - g.min) * static_cast<double>(idx) / static_cast<double>(g.count - 1);
}

std::vector<std::array<int, 3>> enumerate_projections() {
    std::vector<std::array<int, 3>> out;
    out.reserve(20);
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b)
            for (int c = b + 1; c <= 6; ++c) out.push_back({a, b, c});
    return out;
}

ScalarGrid sample_scalar_grid(const ScalarFn& scalar, int dim, const ProjectionSpec& spec) {
    spec.validate(dim);
    ScalarGrid grid;
    grid.spec = spec;
    const int c0 = spec.grid[0].count, c1 = spec.grid[1].count, c2 = spec.grid[2].count;
    grid.values.resize(static_cast<size_t>(c0) * c1 * c2);
    grid.value_min = std::numeric_limits<double>::infinity();
    grid.value_max = -std::numeric_limits<double>::infinity();

    Vec x = spec.reference;
    for (int i = 0; i < c0; ++i) {
        x[static_cast<size_t>(spec.axes[0] - 1)] = grid.coord(0, i);
        for (int j = 0; j < c1; ++j) {
            x[static_cast<size_t>(spec.axes[1] - 1)] = grid.coord(1, j);
            for (int k = 0; k < c2; ++k) {
                x[static_cast<size_t>(spec.axes[2] - 1)] = grid.coord(2, k);
                double v;
                try {
                    v = scalar(x);
                } catch (const NumericError& e) {
                    throw NumericError(std::string(e.what()) + " (grid node " + std::to_string(i) +
                                       "," + std::to_string(j) + "," + std::to_string(k) + ")");
                }
                if (!std::isfinite(v))
                    throw NumericError("sample_scalar_grid: non-finite value at grid node " +
                                       std::to_string(i) + "," + std::to_string(j) + "," +
                                       std::to_string(k));
                grid.values[static_cast<size_t>((i * c1 + j) * c2 + k)] = v;
                grid.value_min = std::min(grid.value_min, v);
                grid.value_max = std::max(grid.value_max, v);
            }
        }
    }
    return grid;
}

ScalarGrid sample_energy_grid(const VectorField& f, const ProjectionSpec& spec) {
    return sample_scalar_grid([&f](const Vec& x) { return yang_mills_energy(f, x); }, f.dim, spec);
}

TriMesh extract_isosurface(const ScalarGrid& grid, double rho) {
    TriMesh mesh;
    if (rho < grid.value_min || rho > grid.value_max) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "level %.17g outside sampled value range [%.17g, %.17g]; mesh is empty", rho,
                      grid.value_min, grid.value_max);
        mesh.warnings.push_back(buf);
        return mesh;
    }

    const int c0 = grid.spec.grid[0].count, c1 = grid.spec.grid[1].count,
              c2 = grid.spec.grid[2].count;
    // Key of a grid edge: axis plus the node it leaves in +axis direction.
    const auto edge_key = [&](int axis, int i, int j, int k) {
        return ((static_cast<long long>(axis) * (c0 + 1) + i) * (c1 + 1) + j) * (c2 + 1) + k;
    };
    std::map<long long, int> vertex_of_edge;

    for (int i = 0; i + 1 < c0; ++i) {
        for (int j = 0; j + 1 < c1; ++j) {
            for (int k = 0; k + 1 < c2; ++k) {
                std::array<double, 8> v;
                int mask = 0;
                for (int c = 0; c < 8; ++c) {
                    const auto off = kCorner[static_cast<size_t>(c)];
                    v[static_cast<size_t>(c)] = grid.value(i + off[0], j + off[1], k + off[2]);
                    if (v[static_cast<size_t>(c)] < rho) mask |= 1 << c;
                }
                if (mask == 0 || mask == 255) continue;

                const auto& tris = case_table()[static_cast<size_t>(mask)];
                // Resolve each referenced cell edge to a shared vertex id.
                std::array<int, 12> vid;
                vid.fill(-1);
                for (const auto& tri : tris) {
                    for (int e : tri) {
                        if (vid[static_cast<size_t>(e)] != -1) continue;
                        const auto ec = kEdge[static_cast<size_t>(e)];
                        const auto o1 = kCorner[static_cast<size_t>(ec[0])];
                        const auto o2 = kCorner[static_cast<size_t>(ec[1])];
                        // Canonical orientation: from the lexicographically
                        // smaller node toward +axis, so adjacent cells
                        // compute bit-identical positions.
                        int axis = 0;
                        for (int s = 0; s < 3; ++s)
                            if (o1[s] != o2[s]) axis = s;
                        const std::array<int, 3> lo = {i + std::min(o1[0], o2[0]),
                                                       j + std::min(o1[1], o2[1]),
                                                       k + std::min(o1[2], o2[2])};
                        const long long key = edge_key(axis, lo[0], lo[1], lo[2]);
                        const auto found = vertex_of_edge.find(key);
                        if (found != vertex_of_edge.end()) {
                            vid[static_cast<size_t>(e)] = found->second;
                            continue;
                        }
                        std::array<int, 3> hi = lo;
                        hi[static_cast<size_t>(axis)] += 1;
                        const double va = grid.value(lo[0], lo[1], lo[2]);
                        const double vb = grid.value(hi[0], hi[1], hi[2]);
                        const double t = (rho - va) / (vb - va);
                        std::array<double, 3> pos = {grid.coord(0, lo[0]), grid.coord(1, lo[1]),
                                                     grid.coord(2, lo[2])};
                        const double lo_c = grid.coord(axis, lo[static_cast<size_t>(axis)]);
                        const double hi_c = grid.coord(axis, hi[static_cast<size_t>(axis)]);
                        pos[static_cast<size_t>(axis)] = lo_c + t * (hi_c - lo_c);
                        const int id = static_cast<int>(mesh.vertices.size());
                        mesh.vertices.push_back(pos);
                        vertex_of_edge.emplace(key, id);
                        vid[static_cast<size_t>(e)] = id;
                    }
                }
                for (const auto& tri : tris)
                    mesh.triangles.push_back({vid[static_cast<size_t>(tri[0])],
                                              vid[static_cast<size_t>(tri[1])],
                                              vid[static_cast<size_t>(tri[2])]});
            }
        }
    }
    return mesh;
}

std::vector<BandPoint> band_point_cloud(const ScalarGrid& grid, double rho, double tol) {
    std::vector<BandPoint> pts;
    const int c0 = grid.spec.grid[0].count, c1 = grid.spec.grid[1].count,
              c2 = grid.spec.grid[2].count;
    for (int i = 0; i < c0; ++i)
        for (int j = 0; j < c1; ++j)
            for (int k = 0; k < c2; ++k) {
                const double v = grid.value(i, j, k);
                if (std::fabs(v - rho) <= tol)
                    pts.push_back({{grid.coord(0, i), grid.coord(1, j), grid.coord(2, k)}, v});
            }
    return pts;
}

void write_obj(std::ostream& os, const TriMesh& mesh) {
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
        os << buf;
    }
    for (const auto& t : mesh.triangles) {
        std::snprintf(buf, sizeof buf, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
        os << buf;
    }
}

} // namespace lhgeom

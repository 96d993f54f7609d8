#pragma once

#include <array>
#include <optional>
#include <string>

#include "lhgeom/covid.hpp"
#include "lhgeom/surface.hpp"

namespace lhgeom {

struct IntegratorConfig {
    double t0 = 0.0;
    double t1 = 10.0;
    double dt = 0.01;
    bool adaptive = false;
    double rtol = 1e-8;
    double atol = 1e-10;
};

// How a tangent velocity y or momentum p is chosen when not given
// explicitly: "field" means y = X(x), "legendre" means p = 2(y - X(x)),
// "zero" means the zero vector.
struct VecChoice {
    std::string mode;  // "field" | "legendre" | "zero" | "explicit"
    Vec values;        // used when mode == "explicit"
};

struct GeometryConfig {
    VecChoice y{"field", {}};
    VecChoice p{"legendre", {}};
    double eps_margin = 1e-9;
    bool check = false;
};

struct SurfaceConfig {
    std::optional<std::array<int, 3>> axes;
    std::vector<AxisRange> grid;  // empty, one entry (shared), or three
    std::optional<double> rho;
    double tol = 0.0;
    bool all = false;
    bool points = false;
};

struct Config {
    ModelParams params;
    Vec initial_state;     // 6 compartments
    double initial_d = 0;  // deceased count
    IntegratorConfig integrator;
    GeometryConfig geometry;
    SurfaceConfig surface;
};

// Parses and validates the JSON config document. Unknown keys anywhere are
// errors naming the key and section; missing required fields are errors
// naming the field. Parse errors carry line/column positions. All failures
// throw std::invalid_argument.
Config load_config(const std::string& path);
Config parse_config(const std::string& text, const std::string& origin);

} // namespace lhgeom

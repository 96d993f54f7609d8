#pragma once

#include "json.hpp"

#include "lhgeom/covid.hpp"
#include "lhgeom/kcc.hpp"

namespace lhgeom {

// Ordered JSON keeps insertion order, so reports serialize in a stable,
// readable layout (and reruns are bit-identical).
using Json = nlohmann::ordered_json;

Json vec_to_json(const Vec& v);
Json mat_to_json(const Mat& m);
Json mats_to_json(const std::vector<Mat>& ms);

// {"eigenvalues":[{"re":..,"im":..}], "max_real_part":.., "class":".."}
Json verdict_to_json(const StabilityVerdict& v);

// Snapshot of the whole geometry at one state: Lagrangian data (L, G, N,
// R, EYM), KCC data (first invariant, E, P, Jacobi verdict) and the
// Hamiltonian side (H, N_H, R_H) at momentum p. When with_checks is set,
// the finite-difference oracles run inline and a "checks" object mapping
// check name to its worst absolute deviation is appended.
Json geometry_report(const ModelParams& params, const Vec& x, const Vec& y, const Vec& p,
                     double eps_margin, bool with_checks);

} // namespace lhgeom

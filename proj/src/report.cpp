#include "lhgeom/report.hpp"

#include "lhgeom/hamilton.hpp"
#include "lhgeom/lagrange.hpp"
#include "lhgeom/validate.hpp"

namespace lhgeom {

Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (double x : v) out.push_back(x);
    return out;
}

Json mat_to_json(const Mat& m) {
    Json out = Json::array();
    for (int i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Json mats_to_json(const std::vector<Mat>& ms) {
    Json out = Json::array();
    for (const Mat& m : ms) out.push_back(mat_to_json(m));
    return out;
}

Json verdict_to_json(const StabilityVerdict& v) {
    Json eigs = Json::array();
    for (const std::complex<double>& z : v.spectrum.eigenvalues)
        eigs.push_back(Json{{"re", z.real()}, {"im", z.imag()}});
    return Json{{"eigenvalues", std::move(eigs)},
                {"max_real_part", v.max_real_part},
                {"class", jacobi_class_name(v.classification)}};
}

Json geometry_report(const ModelParams& params, const Vec& x, const Vec& y, const Vec& p,
                     double eps_margin, bool with_checks) {
    const VectorField f = covid_vector_field(params);
    const TangentPoint tp{x, y};
    const LagrangeGeometry geo = lagrange_geometry(f, tp);

    Json out;
    out["state"] = vec_to_json(x);
    out["y"] = vec_to_json(y);
    out["p"] = vec_to_json(p);
    out["L"] = geo.L;
    out["G"] = vec_to_json(geo.G);
    out["N"] = mat_to_json(geo.N);
    out["R"] = mats_to_json(geo.R);
    out["EYM"] = geo.EYM;
    out["first_invariant"] = vec_to_json(first_invariant(f, tp));
    out["E"] = mat_to_json(curvature_matrix_E(f, tp));
    out["P"] = mat_to_json(deviation_curvature(f, tp));
    out["stability"] = verdict_to_json(jacobi_stability(f, tp, eps_margin));
    out["H"] = hamiltonian(f, {x, p});
    out["N_H"] = mat_to_json(connection_hamilton(f, x));
    out["R_H"] = mats_to_json(torsions_hamilton(f, x));
    if (with_checks) {
        Json checks;
        for (const CheckResult& c : point_checks(f, tp)) checks[c.name] = c.worst;
        out["checks"] = std::move(checks);
    }
    return out;
}

} // namespace lhgeom

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lhgeom/config.hpp"
#include "lhgeom/covid.hpp"
#include "lhgeom/errors.hpp"
#include "lhgeom/hamilton.hpp"
#include "lhgeom/integrate.hpp"
#include "lhgeom/kcc.hpp"
#include "lhgeom/lagrange.hpp"
#include "lhgeom/report.hpp"
#include "lhgeom/surface.hpp"
#include "lhgeom/validate.hpp"

namespace {

using namespace lhgeom;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Empty path or "-" means stdout.
void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file \"" + path + "\"");
    out << text;
    if (!out) throw std::runtime_error("failed while writing \"" + path + "\"");
}

Vec parse_vec6(const std::string& text, const char* what) {
    Vec out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size() || item.empty())
            throw std::invalid_argument(std::string(what) + ": \"" + item + "\" is not a number");
        out.push_back(v);
    }
    if (out.size() != static_cast<size_t>(kCovidDim))
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(kCovidDim) +
                                    " comma-separated numbers, got " + std::to_string(out.size()));
    return out;
}

VecChoice parse_choice(const std::string& text, const char* what,
                       std::initializer_list<const char*> modes) {
    for (const char* m : modes)
        if (text == m) return {m, {}};
    return {"explicit", parse_vec6(text, what)};
}

Vec resolve_y(const VecChoice& c, const VectorField& f, const Vec& x) {
    if (c.mode == "field") return field_eval(f, x);
    if (c.mode == "zero") return Vec(x.size(), 0.0);
    return c.values;
}

Vec resolve_p(const VecChoice& c, const VectorField& f, const Vec& x, const Vec& y) {
    if (c.mode == "legendre") return legendre_momentum(f, {x, y});
    if (c.mode == "zero") return Vec(x.size(), 0.0);
    return c.values;
}

std::vector<AxisRange> parse_grid_flag(const std::string& text) {
    std::vector<AxisRange> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        AxisRange r;
        char trailing = 0;
        if (std::sscanf(item.c_str(), "%lf:%lf:%d%c", &r.min, &r.max, &r.count, &trailing) != 3)
            throw std::invalid_argument("--grid: \"" + item + "\" is not min:max:count");
        out.push_back(r);
    }
    if (out.size() != 1 && out.size() != 3)
        throw std::invalid_argument("--grid takes one range or three comma-joined ranges");
    return out;
}

std::array<int, 3> parse_axes_flag(const std::string& text) {
    std::array<int, 3> axes{};
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%d,%d,%d%c", &axes[0], &axes[1], &axes[2], &trailing) != 3)
        throw std::invalid_argument("--axes: \"" + text + "\" is not three comma-separated indices");
    return axes;
}

// Integration flags shared by simulate and stability; values passed on the
// command line override the config file.
struct IntegratorOpts {
    CLI::Option* t0 = nullptr;
    CLI::Option* t1 = nullptr;
    CLI::Option* dt = nullptr;
    CLI::Option* adaptive = nullptr;
    CLI::Option* rtol = nullptr;
    CLI::Option* atol = nullptr;
    double t0_v = 0.0, t1_v = 0.0, dt_v = 0.0, rtol_v = 0.0, atol_v = 0.0;
    bool adaptive_v = false;

    void attach(CLI::App* cmd) {
        t0 = cmd->add_option("--t0", t0_v, "Start time");
        t1 = cmd->add_option("--t1", t1_v, "End time");
        dt = cmd->add_option("--dt", dt_v, "Fixed step size; sample spacing when adaptive");
        adaptive = cmd->add_flag("--adaptive", adaptive_v, "Use the adaptive embedded pair");
        rtol = cmd->add_option("--rtol", rtol_v, "Adaptive relative tolerance");
        atol = cmd->add_option("--atol", atol_v, "Adaptive absolute tolerance");
    }
    void apply(IntegratorConfig& ic) const {
        if (t0->count()) ic.t0 = t0_v;
        if (t1->count()) ic.t1 = t1_v;
        if (dt->count()) ic.dt = dt_v;
        if (adaptive->count()) ic.adaptive = true;
        if (rtol->count()) ic.rtol = rtol_v;
        if (atol->count()) ic.atol = atol_v;
    }
};

Trajectory run_integrator(const Config& cfg) {
    const VectorField f = covid_vector_field(cfg.params);
    const ModelParams params = cfg.params;
    const RateFn dead = [params](const Vec& x) { return deceased_rate(params, x); };
    const IntegratorConfig& ic = cfg.integrator;
    if (ic.adaptive)
        return integrate_adaptive(f, dead, cfg.initial_state, cfg.initial_d, ic.t0, ic.t1, ic.rtol,
                                  ic.atol, ic.dt);
    return integrate_rk4(f, dead, cfg.initial_state, cfg.initial_d, ic.t0, ic.t1, ic.dt);
}

void report_warnings(const Trajectory& tr) {
    for (const std::string& w : tr.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int cmd_simulate(const Config& cfg, const std::string& out_path, bool with_geometry) {
    const Trajectory tr = run_integrator(cfg);
    const VectorField f = covid_vector_field(cfg.params);
    std::string csv = "t,S,E,Is,Ia,Ih,R,D,Ntot,EYM,max_re_P,jacobi_class\n";
    for (size_t i = 0; i < tr.times.size(); ++i) {
        const Vec& x = tr.states[i];
        csv += fmt(tr.times[i]);
        for (double v : x) {
            csv += ',';
            csv += fmt(v);
        }
        csv += ',';
        csv += fmt(tr.deceased[i]);
        csv += ',';
        csv += fmt(covid_total(x));
        if (with_geometry) {
            csv += ',';
            csv += fmt(yang_mills_energy(f, x));
            const StabilityVerdict v =
                jacobi_stability(f, {x, field_eval(f, x)}, cfg.geometry.eps_margin);
            csv += ',';
            csv += fmt(v.max_real_part);
            csv += ',';
            csv += jacobi_class_name(v.classification);
        } else {
            csv += ",,,";
        }
        csv += '\n';
    }
    report_warnings(tr);
    write_text(out_path, csv);
    return 0;
}

int cmd_stability(const Config& cfg, const std::string& out_path) {
    const Trajectory tr = run_integrator(cfg);
    const VectorField f = covid_vector_field(cfg.params);
    std::string csv = "t,max_re_P,class\n";
    for (size_t i = 0; i < tr.times.size(); ++i) {
        const Vec& x = tr.states[i];
        const StabilityVerdict v =
            jacobi_stability(f, {x, field_eval(f, x)}, cfg.geometry.eps_margin);
        csv += fmt(tr.times[i]);
        csv += ',';
        csv += fmt(v.max_real_part);
        csv += ',';
        csv += jacobi_class_name(v.classification);
        csv += '\n';
    }
    report_warnings(tr);
    write_text(out_path, csv);
    return 0;
}

int cmd_geometry(const Config& cfg, const Vec& x, const VecChoice& yc, const VecChoice& pc,
                 bool with_checks, const std::string& out_path) {
    const VectorField f = covid_vector_field(cfg.params);
    const Vec y = resolve_y(yc, f, x);
    const Vec p = resolve_p(pc, f, x, y);
    const Json rep = geometry_report(cfg.params, x, y, p, cfg.geometry.eps_margin, with_checks);
    write_text(out_path, rep.dump(2) + "\n");
    return 0;
}

int cmd_energy_surface(const Config& cfg, const SurfaceConfig& sc, const std::string& prefix) {
    const VectorField f = covid_vector_field(cfg.params);
    const Vec& ref = cfg.initial_state;

    std::vector<std::array<int, 3>> triples;
    if (sc.all) {
        triples = enumerate_projections();
    } else if (sc.axes) {
        triples.push_back(*sc.axes);
    } else {
        throw std::invalid_argument("energy-surface: provide --axes i,j,k or --all");
    }

    const AxisRange whole{0.0, covid_total(ref), 15};
    std::array<AxisRange, 3> grid{whole, whole, whole};
    if (sc.grid.size() == 1) {
        grid = {sc.grid[0], sc.grid[0], sc.grid[0]};
    } else if (sc.grid.size() == 3) {
        grid = {sc.grid[0], sc.grid[1], sc.grid[2]};
    }
    const double rho = sc.rho ? *sc.rho : yang_mills_energy(f, ref);

    for (const std::array<int, 3>& axes : triples) {
        ProjectionSpec spec;
        spec.axes = axes;
        spec.reference = ref;
        spec.grid = grid;
        spec.rho = rho;
        spec.tol = sc.tol;
        spec.validate(kCovidDim);
        const ScalarGrid sampled = sample_energy_grid(f, spec);

        const std::string base = prefix + "_axes_" + std::to_string(axes[0]) + "_" +
                                 std::to_string(axes[1]) + "_" + std::to_string(axes[2]);
        Json sidecar;
        sidecar["axes"] = Json::array({axes[0], axes[1], axes[2]});
        Json fixed;
        for (int c = 1; c <= kCovidDim; ++c) {
            if (c == axes[0] || c == axes[1] || c == axes[2]) continue;
            fixed[kCompartmentNames[static_cast<size_t>(c - 1)]] = ref[static_cast<size_t>(c - 1)];
        }
        sidecar["fixed"] = std::move(fixed);
        sidecar["rho"] = rho;
        Json gridj = Json::array();
        for (const AxisRange& r : grid)
            gridj.push_back(Json{{"min", r.min}, {"max", r.max}, {"count", r.count}});
        sidecar["grid"] = std::move(gridj);

        if (sc.points) {
            const std::vector<BandPoint> cloud = band_point_cloud(sampled, rho, sc.tol);
            std::string csv = "a1,a2,a3,EYM\n";
            for (const BandPoint& pt : cloud) {
                csv += fmt(pt.coords[0]);
                csv += ',';
                csv += fmt(pt.coords[1]);
                csv += ',';
                csv += fmt(pt.coords[2]);
                csv += ',';
                csv += fmt(pt.value);
                csv += '\n';
            }
            write_text(base + ".csv", csv);
            sidecar["mode"] = "points";
            sidecar["tol"] = sc.tol;
            sidecar["points"] = cloud.size();
        } else {
            const TriMesh mesh = extract_isosurface(sampled, rho);
            for (const std::string& w : mesh.warnings)
                std::fprintf(stderr, "warning: %s\n", w.c_str());
            std::ostringstream obj;
            write_obj(obj, mesh);
            write_text(base + ".obj", obj.str());
            sidecar["mode"] = "mesh";
            sidecar["vertices"] = mesh.vertices.size();
            sidecar["triangles"] = mesh.triangles.size();
        }
        write_text(base + ".json", sidecar.dump(2) + "\n");
    }
    return 0;
}

int cmd_validate(const Config& cfg) {
    const std::vector<CheckResult> checks = run_validation(cfg.params, cfg.initial_state);
    const std::string table = format_check_table(checks);
    std::fwrite(table.data(), 1, table.size(), stdout);
    return all_pass(checks) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lagrange-Hamilton geometry toolkit for a six-compartment epidemic model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string state_str, y_str, p_str, axes_str, grid_str;
    double rho_v = 0.0, tol_v = 0.0;
    bool all_flag = false, points_flag = false, check_flag = false, geometry_cols = false;

    CLI::App* sim = app.add_subcommand("simulate", "Integrate the model and write a trajectory CSV");
    sim->add_option("--config", config_path, "JSON config file")->required();
    sim->add_option("--out", out_path, "Output CSV path (default: stdout)");
    IntegratorOpts sim_io;
    sim_io.attach(sim);
    sim->add_flag("--geometry", geometry_cols,
                  "Fill the EYM/max_re_P/jacobi_class columns (empty otherwise)");

    CLI::App* geo =
        app.add_subcommand("geometry", "Evaluate the full geometric snapshot at one state");
    geo->add_option("--config", config_path, "JSON config file")->required();
    geo->add_option("--out", out_path, "Output JSON path (default: stdout)");
    CLI::Option* geo_state =
        geo->add_option("--state", state_str, "State S,E,Is,Ia,Ih,R (default: config initial_state)");
    CLI::Option* geo_y =
        geo->add_option("--y", y_str, "Velocity: 'field', 'zero', or six numbers (use --y=...)");
    CLI::Option* geo_p =
        geo->add_option("--p", p_str, "Momentum: 'legendre', 'zero', or six numbers (use --p=...)");
    geo->add_flag("--check", check_flag, "Run the finite-difference oracles inline");

    CLI::App* stab =
        app.add_subcommand("stability", "Integrate and classify Jacobi stability per sample");
    stab->add_option("--config", config_path, "JSON config file")->required();
    stab->add_option("--out", out_path, "Output CSV path (default: stdout)");
    IntegratorOpts stab_io;
    stab_io.attach(stab);

    CLI::App* surf = app.add_subcommand("energy-surface",
                                        "Export constant-level slices of the Yang-Mills energy");
    surf->add_option("--config", config_path, "JSON config file")->required();
    surf->add_option("--out", out_path, "Output file prefix (default: energy_surface)");
    CLI::Option* s_axes = surf->add_option("--axes", axes_str, "Three 1-based axes, e.g. 3,4,5");
    CLI::Option* s_grid =
        surf->add_option("--grid", grid_str, "min:max:count, once or three comma-joined");
    CLI::Option* s_rho =
        surf->add_option("--rho", rho_v, "Level value (default: energy at the reference state)");
    CLI::Option* s_tol = surf->add_option("--tol", tol_v, "Band half-width for --points");
    surf->add_flag("--all", all_flag, "All 20 axis triples");
    surf->add_flag("--points", points_flag, "Point-cloud CSV instead of a mesh");

    CLI::App* val = app.add_subcommand("validate", "Run the oracle suite and print a check table");
    val->add_option("--config", config_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Config base = load_config(config_path);
        if (sim->parsed()) {
            Config cfg = base;
            sim_io.apply(cfg.integrator);
            return cmd_simulate(cfg, out_path, geometry_cols);
        }
        if (geo->parsed()) {
            const Vec x = geo_state->count() ? parse_vec6(state_str, "--state") : base.initial_state;
            const VecChoice yc =
                geo_y->count() ? parse_choice(y_str, "--y", {"field", "zero"}) : base.geometry.y;
            const VecChoice pc =
                geo_p->count() ? parse_choice(p_str, "--p", {"legendre", "zero"}) : base.geometry.p;
            return cmd_geometry(base, x, yc, pc, check_flag || base.geometry.check, out_path);
        }
        if (stab->parsed()) {
            Config cfg = base;
            stab_io.apply(cfg.integrator);
            return cmd_stability(cfg, out_path);
        }
        if (surf->parsed()) {
            SurfaceConfig sc = base.surface;
            if (s_axes->count()) sc.axes = parse_axes_flag(axes_str);
            if (s_grid->count()) sc.grid = parse_grid_flag(grid_str);
            if (s_rho->count()) sc.rho = rho_v;
            if (s_tol->count()) sc.tol = tol_v;
            if (all_flag) sc.all = true;
            if (points_flag) sc.points = true;
            return cmd_energy_surface(base, sc, out_path.empty() ? "energy_surface" : out_path);
        }
        return cmd_validate(base);
    } catch (const lhgeom::NumericError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected failure: %s\n", e.what());
        return 3;
    }
}

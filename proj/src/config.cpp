#include "lhgeom/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace lhgeom {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                known = true;
                break;
            }
        if (!known) fail("unknown key \"" + item.key() + "\" in " + where);
    }
}

double require_number(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) fail(where + "." + key + " is missing");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(where + "." + key + " must be a number");
    return v.get<double>();
}

double optional_number(const json& obj, const std::string& where, const char* key, double dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(where + "." + key + " must be a number");
    return v.get<double>();
}

bool optional_bool(const json& obj, const std::string& where, const char* key, bool dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(where + "." + key + " must be a boolean");
    return v.get<bool>();
}

ModelParams parse_params(const json& obj) {
    check_keys(obj, "params",
               {"beta_s", "beta_a", "beta_h", "sigma", "r", "gamma_s", "gamma_a", "gamma_h",
                "phi_s", "delta_s", "delta_h"});
    ModelParams p;
    p.beta_s = require_number(obj, "params", "beta_s");
    p.beta_a = require_number(obj, "params", "beta_a");
    p.beta_h = require_number(obj, "params", "beta_h");
    p.sigma = require_number(obj, "params", "sigma");
    p.r = require_number(obj, "params", "r");
    p.gamma_s = require_number(obj, "params", "gamma_s");
    p.gamma_a = require_number(obj, "params", "gamma_a");
    p.gamma_h = require_number(obj, "params", "gamma_h");
    p.phi_s = require_number(obj, "params", "phi_s");
    p.delta_s = require_number(obj, "params", "delta_s");
    p.delta_h = require_number(obj, "params", "delta_h");
    p.validate();
    return p;
}

VecChoice parse_vec_choice(const json& v, const std::string& where,
                           std::initializer_list<const char*> modes) {
    VecChoice c;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        for (const char* m : modes)
            if (s == m) {
                c.mode = s;
                return c;
            }
        fail(where + ": unsupported mode \"" + s + "\"");
    }
    if (!v.is_array() || v.size() != static_cast<size_t>(kCovidDim))
        fail(where + " must be a mode string or an array of 6 numbers");
    c.mode = "explicit";
    for (const auto& e : v) {
        if (!e.is_number()) fail(where + " entries must be numbers");
        c.values.push_back(e.get<double>());
    }
    return c;
}

std::vector<AxisRange> parse_grid(const json& v, const std::string& where) {
    const auto one = [&where](const json& g) {
        check_keys(g, where, {"min", "max", "count"});
        AxisRange r;
        r.min = require_number(g, where, "min");
        r.max = require_number(g, where, "max");
        const double c = require_number(g, where, "count");
        r.count = static_cast<int>(c);
        if (r.count < 2 || static_cast<double>(r.count) != c)
            fail(where + ".count must be an integer >= 2");
        return r;
    };
    std::vector<AxisRange> out;
    if (v.is_object()) {
        out.push_back(one(v));
        return out;
    }
    if (!v.is_array() || (v.size() != 1 && v.size() != 3))
        fail(where + " must be one range object or an array of 1 or 3");
    for (const auto& g : v) out.push_back(one(g));
    return out;
}

} // namespace

Config parse_config(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line/column pair.
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(origin + ": parse error at line " + std::to_string(line) + ", column " +
             std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) fail(origin + ": top level must be an object");
    check_keys(doc, "top level", {"params", "initial_state", "integrator", "geometry", "surface"});

    Config cfg;
    if (!doc.contains("params")) fail("params section is missing");
    cfg.params = parse_params(doc.at("params"));

    if (!doc.contains("initial_state")) fail("initial_state section is missing");
    {
        const json& st = doc.at("initial_state");
        check_keys(st, "initial_state", {"S", "E", "Is", "Ia", "Ih", "R", "D"});
        cfg.initial_state.resize(static_cast<size_t>(kCovidDim));
        for (int i = 0; i < kCovidDim; ++i)
            cfg.initial_state[static_cast<size_t>(i)] =
                require_number(st, "initial_state", kCompartmentNames[static_cast<size_t>(i)]);
        cfg.initial_d = optional_number(st, "initial_state", "D", 0.0);
        require_nonnegative_state(cfg.initial_state);
        if (cfg.initial_d < 0.0) fail("initial_state.D must be >= 0");
    }

    if (doc.contains("integrator")) {
        const json& it = doc.at("integrator");
        check_keys(it, "integrator", {"t0", "t1", "dt", "adaptive", "rtol", "atol"});
        cfg.integrator.t0 = optional_number(it, "integrator", "t0", cfg.integrator.t0);
        cfg.integrator.t1 = optional_number(it, "integrator", "t1", cfg.integrator.t1);
        cfg.integrator.dt = optional_number(it, "integrator", "dt", cfg.integrator.dt);
        cfg.integrator.adaptive = optional_bool(it, "integrator", "adaptive", false);
        cfg.integrator.rtol = optional_number(it, "integrator", "rtol", cfg.integrator.rtol);
        cfg.integrator.atol = optional_number(it, "integrator", "atol", cfg.integrator.atol);
    }

    if (doc.contains("geometry")) {
        const json& ge = doc.at("geometry");
        check_keys(ge, "geometry", {"y", "p", "eps_margin", "check"});
        if (ge.contains("y"))
            cfg.geometry.y = parse_vec_choice(ge.at("y"), "geometry.y", {"field", "zero"});
        if (ge.contains("p"))
            cfg.geometry.p = parse_vec_choice(ge.at("p"), "geometry.p", {"legendre", "zero"});
        cfg.geometry.eps_margin =
            optional_number(ge, "geometry", "eps_margin", cfg.geometry.eps_margin);
        if (cfg.geometry.eps_margin < 0.0) fail("geometry.eps_margin must be >= 0");
        cfg.geometry.check = optional_bool(ge, "geometry", "check", false);
    }

    if (doc.contains("surface")) {
        const json& su = doc.at("surface");
        check_keys(su, "surface", {"axes", "grid", "rho", "tol", "all", "points"});
        if (su.contains("axes")) {
            const json& ax = su.at("axes");
            if (!ax.is_array() || ax.size() != 3) fail("surface.axes must be an array of 3");
            std::array<int, 3> axes{};
            for (size_t i = 0; i < 3; ++i) {
                if (!ax[i].is_number_integer()) fail("surface.axes entries must be integers");
                axes[i] = ax[i].get<int>();
            }
            cfg.surface.axes = axes;
        }
        if (su.contains("grid")) cfg.surface.grid = parse_grid(su.at("grid"), "surface.grid");
        if (su.contains("rho")) {
            cfg.surface.rho = require_number(su, "surface", "rho");
            if (!(*cfg.surface.rho >= 0.0)) fail("surface.rho must be >= 0");
        }
        cfg.surface.tol = optional_number(su, "surface", "tol", 0.0);
        if (cfg.surface.tol < 0.0) fail("surface.tol must be >= 0");
        cfg.surface.all = optional_bool(su, "surface", "all", false);
        cfg.surface.points = optional_bool(su, "surface", "points", false);
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

} // namespace lhgeom

#include <string>

#include "doctest.h"
#include "lhgeom/config.hpp"

using namespace lhgeom;

namespace {

// A minimal valid document the error cases below are derived from.
const char* kGood = R"({
  "params": {
    "beta_s": 0.4, "beta_a": 0.3, "beta_h": 0.1,
    "sigma": 0.2, "r": 0.5,
    "gamma_s": 0.1, "gamma_a": 0.15, "gamma_h": 0.12,
    "phi_s": 0.05, "delta_s": 0.01, "delta_h": 0.02
  },
  "initial_state": {
    "S": 900, "E": 50, "Is": 20, "Ia": 20, "Ih": 5, "R": 5
  }
})";

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "test");
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("a minimal document parses with defaults") {
    const Config cfg = parse_config(kGood, "test");
    CHECK(cfg.params.beta_s == 0.4);
    CHECK(cfg.params.delta_h == 0.02);
    REQUIRE(cfg.initial_state.size() == 6);
    CHECK(cfg.initial_state[0] == 900.0);
    CHECK(cfg.initial_state[5] == 5.0);
    CHECK(cfg.initial_d == 0.0);
    CHECK(cfg.integrator.t0 == 0.0);
    CHECK(cfg.integrator.t1 == 10.0);
    CHECK(cfg.integrator.dt == 0.01);
    CHECK(cfg.integrator.adaptive == false);
    CHECK(cfg.geometry.y.mode == "field");
    CHECK(cfg.geometry.p.mode == "legendre");
    CHECK(cfg.geometry.eps_margin == 1e-9);
    CHECK(cfg.surface.tol == 0.0);
    CHECK(!cfg.surface.axes.has_value());
}

TEST_CASE("optional sections override the defaults") {
    const std::string text = R"({
      "params": {
        "beta_s": 0.4, "beta_a": 0.3, "beta_h": 0.1,
        "sigma": 0.2, "r": 0.5,
        "gamma_s": 0.1, "gamma_a": 0.15, "gamma_h": 0.12,
        "phi_s": 0.05, "delta_s": 0.01, "delta_h": 0.02
      },
      "initial_state": {
        "S": 900, "E": 50, "Is": 20, "Ia": 20, "Ih": 5, "R": 5, "D": 2.5
      },
      "integrator": {"t0": 1.0, "t1": 50.0, "dt": 0.5, "adaptive": true,
                     "rtol": 1e-6, "atol": 1e-9},
      "geometry": {"y": "zero", "p": [1, 2, 3, 4, 5, 6],
                   "eps_margin": 1e-7, "check": true},
      "surface": {"axes": [3, 4, 5], "grid": {"min": 0, "max": 100, "count": 9},
                  "rho": 0.5, "tol": 0.01, "all": false, "points": true}
    })";
    const Config cfg = parse_config(text, "test");
    CHECK(cfg.initial_d == 2.5);
    CHECK(cfg.integrator.t1 == 50.0);
    CHECK(cfg.integrator.adaptive == true);
    CHECK(cfg.integrator.rtol == 1e-6);
    CHECK(cfg.geometry.y.mode == "zero");
    CHECK(cfg.geometry.p.mode == "explicit");
    REQUIRE(cfg.geometry.p.values.size() == 6);
    CHECK(cfg.geometry.p.values[3] == 4.0);
    CHECK(cfg.geometry.eps_margin == 1e-7);
    CHECK(cfg.geometry.check == true);
    REQUIRE(cfg.surface.axes.has_value());
    CHECK((*cfg.surface.axes)[0] == 3);
    REQUIRE(cfg.surface.grid.size() == 1);
    CHECK(cfg.surface.grid[0].count == 9);
    REQUIRE(cfg.surface.rho.has_value());
    CHECK(*cfg.surface.rho == 0.5);
    CHECK(cfg.surface.points == true);
}

TEST_CASE("unknown keys are named with their section") {
    std::string text = kGood;
    text.insert(text.find("\"beta_s\""), "\"beta_x\": 1.0, ");
    const std::string msg = error_of(text);
    CHECK(msg.find("unknown key \"beta_x\"") != std::string::npos);
    CHECK(msg.find("params") != std::string::npos);

    std::string top = kGood;
    top.insert(top.rfind('}'), ", \"paramz\": {}");
    CHECK(error_of(top).find("unknown key \"paramz\"") != std::string::npos);
}

TEST_CASE("missing required fields are named") {
    std::string text = kGood;
    const size_t pos = text.find("\"sigma\": 0.2,");
    text.erase(pos, std::string("\"sigma\": 0.2,").size());
    const std::string msg = error_of(text);
    CHECK(msg.find("params.sigma") != std::string::npos);
    CHECK(msg.find("missing") != std::string::npos);

    CHECK(error_of("{}").find("params") != std::string::npos);

    std::string nostate = kGood;
    const size_t spos = nostate.find("\"Ih\": 5,");
    nostate.erase(spos, std::string("\"Ih\": 5,").size());
    CHECK(error_of(nostate).find("Ih") != std::string::npos);
}

TEST_CASE("domain violations are rejected") {
    std::string text = kGood;
    text.replace(text.find("\"r\": 0.5"), std::string("\"r\": 0.5").size(), "\"r\": 1.5");
    CHECK(error_of(text).find("params.r") != std::string::npos);

    std::string neg = kGood;
    neg.replace(neg.find("\"E\": 50"), std::string("\"E\": 50").size(), "\"E\": -50");
    CHECK(error_of(neg).find("state.E") != std::string::npos);

    std::string negd = kGood;
    negd.replace(negd.find("\"R\": 5"), std::string("\"R\": 5").size(), "\"R\": 5, \"D\": -1");
    CHECK(!error_of(negd).empty());

    std::string badtype = kGood;
    badtype.replace(badtype.find("\"sigma\": 0.2"), std::string("\"sigma\": 0.2").size(),
                    "\"sigma\": \"fast\"");
    CHECK(error_of(badtype).find("number") != std::string::npos);
}

TEST_CASE("geometry vector choices are validated") {
    std::string text = kGood;
    text.insert(text.rfind('}'), R"(, "geometry": {"y": "sideways"})");
    CHECK(!error_of(text).empty());

    std::string short_vec = kGood;
    short_vec.insert(short_vec.rfind('}'), R"(, "geometry": {"y": [1, 2, 3]})");
    CHECK(!error_of(short_vec).empty());
}

TEST_CASE("surface grid accepts one shared range or three") {
    std::string three = kGood;
    three.insert(three.rfind('}'),
                 R"(, "surface": {"grid": [{"min": 0, "max": 1, "count": 5},
                                           {"min": 0, "max": 2, "count": 5},
                                           {"min": 0, "max": 3, "count": 5}]})");
    const Config cfg = parse_config(three, "test");
    REQUIRE(cfg.surface.grid.size() == 3);
    CHECK(cfg.surface.grid[2].max == 3.0);

    std::string two = kGood;
    two.insert(two.rfind('}'),
               R"(, "surface": {"grid": [{"min": 0, "max": 1, "count": 5},
                                         {"min": 0, "max": 2, "count": 5}]})");
    CHECK(!error_of(two).empty());

    std::string badcount = kGood;
    badcount.insert(badcount.rfind('}'),
                    R"(, "surface": {"grid": {"min": 0, "max": 1, "count": 1}})");
    CHECK(!error_of(badcount).empty());

    std::string negrho = kGood;
    negrho.insert(negrho.rfind('}'), R"(, "surface": {"rho": -0.5})");
    CHECK(!error_of(negrho).empty());
}

TEST_CASE("parse errors carry the line position") {
    const std::string broken = "{\n  \"params\": {\n  oops\n}";
    const std::string msg = error_of(broken);
    CHECK(msg.find("line 3") != std::string::npos);
}

TEST_CASE("top-level document must be an object") {
    CHECK(!error_of("[1, 2, 3]").empty());
    CHECK(!error_of("42").empty());
}

TEST_CASE("load_config reports unreadable paths") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/config.json"), std::invalid_argument);
}

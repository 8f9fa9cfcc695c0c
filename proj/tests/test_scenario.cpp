#include "lubrisim/errors.hpp"
#include "lubrisim/scenario.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace lubrisim;
using doctest::Approx;

namespace {

std::string config_error(std::string_view text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("empty document gives the reference coating-flow run") {
  for (auto text : {"", "{}", "  \n"}) {
    const auto s = parse_config(text);
    CHECK(s.nodes == 97);
    CHECK(s.length == Approx(15.0 * std::numbers::pi));
    CHECK(s.boundary == Boundary::no_flux_symmetric);
    CHECK(s.step.dt == 100.0);
    CHECK(s.step.newton_iters == 1);
    CHECK(s.params.reynolds == 3.0);
    CHECK(s.params.hamaker == 1e-3);
    CHECK(s.params.inv_peclet == Approx(1.0 / 300.0).epsilon(1e-15));
    CHECK(s.params.bond == kQuotedBond);
    CHECK(s.initial.kind == InitialKind::surfactant_drop);
    CHECK(s.variant == ModelVariant::full_cm);
    CHECK(s.snapshots == std::vector<double>{1.0, 10.0, 100.0, 1000.0});
  }
}

TEST_CASE("validation errors name the field") {
  CHECK(config_error(R"({"grid": {"nodes": 3}})").find("grid.nodes") != std::string::npos);
  CHECK(config_error(R"({"params": {"inv_peclet": -0.1}})").find("params.inv_peclet") != std::string::npos);
  CHECK(config_error(R"({"step": {"dt": 0}})").find("step.dt") != std::string::npos);
  CHECK(config_error(R"({"snapshots": [5, 1], "t_end": 10})").find("snapshots") != std::string::npos);
  CHECK(config_error(R"({"t_end": 10, "snapshots": [20]})").find("snapshots") != std::string::npos);
  CHECK(config_error(R"({"initial": {"kind": "corrugation", "amplitude": 1.5}})").find("initial") != std::string::npos);
  CHECK(config_error(R"({"grid": {"nodes": "many"}})").find("grid.nodes") != std::string::npos);
}

TEST_CASE("unknown keys are rejected") {
  CHECK(config_error(R"({"gird": {}})").find("gird") != std::string::npos);
  CHECK(config_error(R"({"params": {"reynolds": 3, "weber": 1}})").find("params.weber") != std::string::npos);
  CHECK(config_error(R"({"params": {"terms": {"viscous": true}}})").find("params.terms.viscous") != std::string::npos);
  CHECK_FALSE(config_error(R"({"model": "navier"})").empty());
}

TEST_CASE("parse errors carry line information") {
  const auto msg = config_error("{\n  \"grid\": {\n    \"nodes\": 97,\n  }\n}");
  CHECK(msg.find("line 4") != std::string::npos);
}

TEST_CASE("values are read from the document") {
  const auto s = parse_config(R"({
    "name": "tilted",
    "grid": {"nodes": 65, "length": 20, "boundary": "periodic"},
    "initial": {"kind": "corrugation", "amplitude": 0.05, "wavenumber": 0.314159},
    "params": {"bond": 0.1, "incline": 0.2, "diffusion_form": "plain",
               "terms": {"van_der_waals": false}},
    "model": "loworder",
    "step": {"dt": 0.5, "newton_iters": 2},
    "snapshots": [1, 2]
  })");
  CHECK(s.name == "tilted");
  CHECK(s.nodes == 65);
  CHECK(s.boundary == Boundary::periodic);
  CHECK(s.initial.kind == InitialKind::corrugation);
  CHECK(s.params.diffusion_form == DiffusionForm::plain);
  CHECK_FALSE(s.params.toggles.van_der_waals);
  CHECK(s.params.toggles.marangoni);
  CHECK(s.variant == ModelVariant::low_order_cm);
  CHECK(s.step.newton_iters == 2);
  CHECK(s.t_end == 2.0);
}

TEST_CASE("presets") {
  CHECK(preset("fig2").snapshots == std::vector<double>{1.0, 10.0, 100.0, 1000.0});
  CHECK(preset("fig3").snapshots == std::vector<double>{0.0, 15.0, 30.0, 45.0});
  CHECK(preset("fig4").snapshots == std::vector<double>{0.0, 100.0, 200.0, 300.0});
  CHECK_THROWS_AS(preset("fig9"), ConfigError);
  CHECK(preset_names().size() == 3);
  for (const auto& info : preset_names()) CHECK_NOTHROW(preset(info.name).validate());

  SUBCASE("drop of surfactant centred on a flat film") {
    const auto sc = preset("fig2");
    const auto s = sc.initial_state();
    const auto g = sc.grid();
    for (double h : s.eta) CHECK(h == 1.0);
    CHECK(s.gamma[48] == Approx(2.0));
    CHECK(s.gamma.front() == 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(s.gamma[i] == Approx(s.gamma[g.size() - 1 - i]).epsilon(1e-12));
  }

  SUBCASE("corrugated film under uniform surfactant") {
    const auto s = preset("fig3").initial_state();
    CHECK(s.eta.front() == Approx(1.1));
    CHECK(*std::min_element(s.eta.begin(), s.eta.end()) == Approx(0.9));
    for (double c : s.gamma) CHECK(c == 1.0);
  }
}

TEST_CASE("round trip through the document format") {
  std::vector<Scenario> cases;
  for (const auto& info : preset_names()) cases.push_back(preset(info.name));

  Scenario custom;
  custom.name = "custom arrays";
  custom.nodes = 8;
  custom.boundary = Boundary::periodic;
  custom.length = 3.0;
  custom.initial.kind = InitialKind::custom;
  custom.initial.eta = {1.0, 1.1, 1.2, 1.3, 1.2, 1.1, 1.0, 0.9};
  custom.initial.gamma = {1.0, 0.9, 0.8, 0.7, 0.8, 0.9, 1.0, 1.1};
  custom.initial.drop_center = 0.3;
  custom.params.toggles.gravity_normal = false;
  custom.params.inv_peclet = 1.0 / 7.0;
  custom.params.incline = 0.1;
  custom.variant = ModelVariant::de_wit;
  custom.step.fd_epsilon = 3e-8;
  custom.t_end = 0.1 + 0.2;
  custom.snapshots = {0.1, 0.2};
  cases.push_back(custom);

  for (const auto& sc : cases) {
    const auto back = parse_config(dump_config(sc));
    CHECK(back == sc);
  }
}

TEST_CASE("loading from disk") {
  const auto path = std::filesystem::temp_directory_path() / "lubrisim_scenario_test.json";
  {
    std::ofstream out(path);
    out << dump_config(preset("fig4"));
  }
  CHECK(load_config(path) == preset("fig4"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config(path), ConfigError);
}

TEST_CASE("command-line overrides") {
  auto s = preset("fig2");
  Overrides o;
  o.variant = ModelVariant::de_wit;
  o.inv_peclet = 0.1;
  o.dt = 5.0;
  o.nodes = 49;
  o.t_end = 50.0;
  apply_overrides(s, o);
  CHECK(s.variant == ModelVariant::de_wit);
  CHECK(s.params.inv_peclet == 0.1);
  CHECK(s.step.dt == 5.0);
  CHECK(s.nodes == 49);
  CHECK(s.t_end == 50.0);
  CHECK(s.snapshots == std::vector<double>{1.0, 10.0});

  Overrides bad;
  bad.inv_peclet = -1.0;
  auto t = preset("fig2");
  CHECK_THROWS_AS(apply_overrides(t, bad), ConfigError);
}

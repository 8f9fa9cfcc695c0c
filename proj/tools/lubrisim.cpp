#include "lubrisim/commands.hpp"
#include "lubrisim/errors.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <spdlog/spdlog.h>

using namespace lubrisim;

namespace {

struct ScenarioOptions {
  std::string config;
  std::string preset_name;
  std::string variant;
  std::optional<double> delta_s;
  std::optional<double> t_end;
  std::optional<double> dt;
  std::optional<std::size_t> nodes;
};

void add_scenario_options(CLI::App* cmd, ScenarioOptions& o, bool with_variant) {
  auto* cfg = cmd->add_option("--config", o.config, "Scenario file (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset_name, "Built-in scenario (see preset-list)")->excludes(cfg);
  if (with_variant) cmd->add_option("--variant", o.variant, "Model: full|loworder|dewit");
  cmd->add_option("--delta-s", o.delta_s, "Inverse Peclet number");
  cmd->add_option("--dt", o.dt, "Time step");
  cmd->add_option("--nodes", o.nodes, "Number of grid nodes");
}

Scenario build_scenario(const ScenarioOptions& o, bool apply_t_end) {
  Scenario s = !o.config.empty() ? load_config(o.config) : preset(o.preset_name.empty() ? "fig2" : o.preset_name);
  Overrides ov;
  if (!o.variant.empty()) {
    try {
      ov.variant = variant_from_string(o.variant);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  ov.inv_peclet = o.delta_s;
  if (apply_t_end) ov.t_end = o.t_end;
  ov.dt = o.dt;
  ov.nodes = o.nodes;
  apply_overrides(s, ov);
  return s;
}

} // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Thin contaminated film simulator"};
  app.require_subcommand(1);

  ScenarioOptions sim_opts;
  std::string sim_out = "out";
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write snapshot CSVs");
  add_scenario_options(simulate, sim_opts, true);
  simulate->add_option("--t-end", sim_opts.t_end, "Final time");
  simulate->add_option("--out", sim_out, "Output directory");

  double disp_delta_s = 1e-4, disp_k_max = 2.0, disp_slope = 1.0;
  int disp_points = 201;
  std::string disp_out = "dispersion.csv";
  auto* dispersion = app.add_subcommand("dispersion", "Write the linear dispersion curve");
  dispersion->add_option("--delta-s", disp_delta_s, "Inverse Peclet number");
  dispersion->add_option("--k-max", disp_k_max, "Largest wavenumber");
  dispersion->add_option("--points", disp_points, "Number of wavenumbers");
  dispersion->add_option("--tension-slope", disp_slope, "Surface tension slope A");
  dispersion->add_option("--out", disp_out, "Output CSV path");

  ScenarioOptions cmp_opts;
  std::vector<std::string> cmp_variants{"full", "dewit"};
  std::vector<double> peclets{3.0, 30.0, 300.0};
  double t_compare = 10.0;
  std::string cmp_out = "compare";
  auto* compare = app.add_subcommand("compare", "Difference between two models at several Peclet numbers");
  add_scenario_options(compare, cmp_opts, false);
  compare->add_option("--variant", cmp_variants, "Two models to compare")->expected(2)->delimiter(',');
  compare->add_option("--peclet", peclets, "Peclet numbers, comma separated")->delimiter(',');
  compare->add_option("--t-end", t_compare, "Comparison time");
  compare->add_option("--out", cmp_out, "Output directory");

  auto* list = app.add_subcommand("preset-list", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(build_scenario(sim_opts, true), sim_out);
    if (dispersion->parsed()) return cmd_dispersion(disp_delta_s, disp_k_max, disp_points, disp_out, disp_slope);
    if (compare->parsed()) {
      const Scenario s = build_scenario(cmp_opts, false);
      ModelVariant first, second;
      try {
        first = variant_from_string(cmp_variants.at(0));
        second = variant_from_string(cmp_variants.at(1));
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      return cmd_compare(s, first, second, peclets, t_compare, cmp_out);
    }
    if (list->parsed()) {
      for (const auto& p : preset_names()) std::cout << p.name << "\t" << p.description << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  } catch (const DomainError& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  }
  return kExitOk;
}

#include "lubrisim/commands.hpp"

#include "lubrisim/errors.hpp"
#include "lubrisim/stability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <future>
#include <spdlog/spdlog.h>

namespace lubrisim {

namespace fs = std::filesystem;

void configure_logging() {
  const char* env = std::getenv("LUBRISIM_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet") spdlog::set_level(spdlog::level::off);
  else if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else {
    spdlog::set_level(spdlog::level::info);
    if (level != "info") spdlog::warn("LUBRISIM_LOG='{}' not recognised, using info", level);
  }
}

std::string format_csv_number(double v) { return fmt::format("{:.17g}", v); }

std::string snapshot_file_name(double t) { return fmt::format("t{:.15g}.csv", t); }

void write_profile_csv(std::ostream& os, const Grid& grid, const State& s) {
  os << "x,eta,gamma\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << format_csv_number(grid.x(i)) << ',' << format_csv_number(s.eta[i]) << ','
       << format_csv_number(s.gamma[i]) << '\n';
}

namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

} // namespace

int cmd_simulate(const Scenario& scenario, const fs::path& out_dir) {
  try {
    scenario.validate();
    fs::create_directories(out_dir);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  }

  const auto problem = scenario.problem();
  const auto s0 = scenario.initial_state();
  spdlog::info("simulating '{}' with the {} model on {} nodes to t = {}", scenario.name,
               to_string(scenario.variant), scenario.nodes, scenario.t_end);

  const auto start = std::chrono::steady_clock::now();
  RunResult run;
  try {
    run = run_simulation(s0, scenario.t_end, scenario.snapshots, scenario.step, problem);
  } catch (const std::exception& e) {
    spdlog::error("solver failure: {}", e.what());
    return kExitSolverFailure;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    const auto grid = scenario.grid();
    for (const auto& snap : run.snapshots) {
      const bool requested = std::find(scenario.snapshots.begin(), scenario.snapshots.end(), snap.time) !=
                             scenario.snapshots.end();
      if (!requested) continue;
      auto out = open_output(out_dir / snapshot_file_name(snap.time));
      write_profile_csv(out, grid, snap.state);
    }

    auto report = open_output(out_dir / "run_report.txt");
    const auto& sum = run.summary;
    report << fmt::format("scenario: {}\nmodel: {}\nnodes: {}\nt_end: {}\nsteps: {}\n", scenario.name,
                          to_string(scenario.variant), scenario.nodes, run.final_state.time, sum.steps);
    report << fmt::format("film_mass_drift: {:.6e}\nsurfactant_mass_drift: {:.6e}\n", sum.film_mass_drift,
                          sum.surfactant_mass_drift);
    report << fmt::format("max_step_film_mass_drift: {:.6e}\nmax_step_surfactant_mass_drift: {:.6e}\n",
                          sum.max_step_film_drift, sum.max_step_surfactant_drift);
    report << fmt::format("max_newton_residual: {:.6e}\nwall_time_s: {:.3f}\n", sum.max_residual_after, wall);
    report << "status: " << (run.failure ? "failed: " + *run.failure : std::string("ok")) << '\n';
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  }

  if (run.failure) {
    spdlog::error("{}", *run.failure);
    return kExitSolverFailure;
  }
  spdlog::info("{} steps, film mass drift {:.3e}, surfactant mass drift {:.3e}, {:.2f} s", run.summary.steps,
               run.summary.film_mass_drift, run.summary.surfactant_mass_drift, wall);
  return kExitOk;
}

int cmd_dispersion(double inv_peclet, double k_max, int n_points, const fs::path& out_path,
                   double tension_slope) {
  std::vector<stability::DispersionResult> rows;
  try {
    rows = stability::dispersion_scan(0.0, k_max, n_points, inv_peclet, tension_slope);
  } catch (const DomainError& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  }
  try {
    auto out = open_output(out_path);
    stability::write_dispersion_csv(out, rows);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  }
  spdlog::info("wrote {} dispersion rows to {}", rows.size(), out_path.string());
  return kExitOk;
}

ComparisonReport compare_variants(const Scenario& scenario, ModelVariant first, ModelVariant second,
                                  std::span<const double> peclet_list, double t_compare) {
  if (!(t_compare >= 0.0)) throw ConfigError("comparison time must be non-negative");
  for (double pe : peclet_list)
    if (!(pe > 0.0)) throw ConfigError(fmt::format("Peclet numbers must be positive, got {}", pe));

  const double t_stop = scenario.initial_state().time + t_compare;
  auto run_one = [&](double peclet) {
    ComparisonEntry entry;
    entry.peclet = peclet;
    Scenario sc = scenario;
    sc.params.inv_peclet = 1.0 / peclet;
    const auto grid = sc.grid();
    const auto s0 = sc.initial_state();
    const std::vector<double> at{t_stop};

    State finals[2];
    const ModelVariant variants[2] = {first, second};
    for (int v = 0; v < 2; ++v) {
      sc.variant = variants[v];
      auto run = run_simulation(s0, t_stop, at, sc.step, sc.problem());
      if (run.failure) throw std::runtime_error(*run.failure);
      finals[v] = run.final_state;
    }

    const auto w = grid.weights();
    entry.x = grid.coordinates();
    entry.d_eta.resize(grid.size());
    entry.d_gamma.resize(grid.size());
    double l2e = 0.0, l2g = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      entry.d_eta[i] = finals[0].eta[i] - finals[1].eta[i];
      entry.d_gamma[i] = finals[0].gamma[i] - finals[1].gamma[i];
      entry.linf_eta = std::max(entry.linf_eta, std::abs(entry.d_eta[i]));
      entry.linf_gamma = std::max(entry.linf_gamma, std::abs(entry.d_gamma[i]));
      l2e += w[i] * entry.d_eta[i] * entry.d_eta[i];
      l2g += w[i] * entry.d_gamma[i] * entry.d_gamma[i];
    }
    entry.l2_eta = std::sqrt(l2e);
    entry.l2_gamma = std::sqrt(l2g);
    return entry;
  };

  std::vector<std::future<ComparisonEntry>> jobs;
  for (double pe : peclet_list) jobs.push_back(std::async(std::launch::async, run_one, pe));

  ComparisonReport report{first, second, t_compare, {}};
  for (auto& job : jobs) report.entries.push_back(job.get());
  return report;
}

int cmd_compare(const Scenario& scenario, ModelVariant first, ModelVariant second,
                std::span<const double> peclet_list, double t_compare, const fs::path& out_dir) {
  ComparisonReport report;
  try {
    scenario.validate();
    report = compare_variants(scenario, first, second, peclet_list, t_compare);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    spdlog::error("solver failure: {}", e.what());
    return kExitSolverFailure;
  }

  try {
    fs::create_directories(out_dir);
    for (const auto& e : report.entries) {
      auto out = open_output(out_dir / fmt::format("diff_P{:.15g}.csv", e.peclet));
      out << "x,d_eta,d_gamma\n";
      for (std::size_t i = 0; i < e.x.size(); ++i)
        out << format_csv_number(e.x[i]) << ',' << format_csv_number(e.d_eta[i]) << ','
            << format_csv_number(e.d_gamma[i]) << '\n';
    }
    auto summary = open_output(out_dir / "summary.csv");
    summary << "peclet,t,linf_eta,l2_eta,linf_gamma,l2_gamma\n";
    for (const auto& e : report.entries)
      summary << format_csv_number(e.peclet) << ',' << format_csv_number(report.t_compare) << ','
              << format_csv_number(e.linf_eta) << ',' << format_csv_number(e.l2_eta) << ','
              << format_csv_number(e.linf_gamma) << ',' << format_csv_number(e.l2_gamma) << '\n';
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitConfigError;
  }
  for (const auto& e : report.entries)
    spdlog::info("P = {}: |d eta|_inf = {:.3e}, |d Gamma|_inf = {:.3e}", e.peclet, e.linf_eta, e.linf_gamma);
  return kExitOk;
}

} // namespace lubrisim

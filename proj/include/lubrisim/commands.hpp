#pragma once

#include "lubrisim/scenario.hpp"

#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

namespace lubrisim {

/// Process exit statuses of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitConfigError = 2, kExitSolverFailure = 3 };

/// Reads LUBRISIM_LOG (quiet|info|debug) and sets the global log level.
void configure_logging();

/// Writes one CSV per requested snapshot (out_dir/t<time>.csv, columns x,
/// eta, gamma) plus out_dir/run_report.txt.
int cmd_simulate(const Scenario& scenario, const std::filesystem::path& out_dir);

/// Writes the dispersion curve on [0, k_max].
int cmd_dispersion(double inv_peclet, double k_max, int n_points, const std::filesystem::path& out_path,
                   double tension_slope = 1.0);

/// Difference between two model variants at one time for one Peclet number.
struct ComparisonEntry {
  double peclet = 0.0;
  double linf_eta = 0.0;
  double l2_eta = 0.0;
  double linf_gamma = 0.0;
  double l2_gamma = 0.0;
  std::vector<double> x;
  std::vector<double> d_eta; ///< first variant minus second
  std::vector<double> d_gamma;
};

struct ComparisonReport {
  ModelVariant first = ModelVariant::full_cm;
  ModelVariant second = ModelVariant::de_wit;
  double t_compare = 10.0;
  std::vector<ComparisonEntry> entries;
};

/// Runs both variants of the scenario at each Peclet number up to
/// t_compare, concurrently per Peclet number. Throws on solver failure.
ComparisonReport compare_variants(const Scenario& scenario, ModelVariant first, ModelVariant second,
                                  std::span<const double> peclet_list, double t_compare);

/// Writes out_dir/diff_P<peclet>.csv (x, d_eta, d_gamma) per Peclet number
/// and out_dir/summary.csv.
int cmd_compare(const Scenario& scenario, ModelVariant first, ModelVariant second,
                std::span<const double> peclet_list, double t_compare, const std::filesystem::path& out_dir);

/// 17 significant digits, locale independent.
std::string format_csv_number(double v);

/// Snapshot file name for a time value, e.g. t100.csv.
std::string snapshot_file_name(double t);

void write_profile_csv(std::ostream& os, const Grid& grid, const State& s);

} // namespace lubrisim

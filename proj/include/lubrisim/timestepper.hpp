#pragma once

#include "lubrisim/banded.hpp"
#include "lubrisim/core.hpp"
#include "lubrisim/discretization.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lubrisim {

struct StepConfig {
  double dt = 100.0;
  int newton_iters = 1;
  double newton_tol = 1e-10; ///< only consulted when newton_iters > 1
  double fd_epsilon = 1e-7;  ///< perturbation is fd_epsilon * max(1, |value|)

  void validate() const;

  bool operator==(const StepConfig&) const = default;
};

struct StepReport {
  double residual_norm_before = 0.0;
  double residual_norm_after = 0.0;
  int newton_iters_used = 0;
  std::vector<double> residual_history; ///< max-norm after each Newton update
  double film_mass_drift = 0.0;         ///< relative change over the step
  double surfactant_mass_drift = 0.0;
};

/// Everything needed to evaluate one implicit step, bundled.
struct Problem {
  ModelVariant variant = ModelVariant::full_cm;
  Params params{};
  StencilOps ops;
};

/// Backward-Euler residual (s_new - s_old) / dt - rhs(s_new), interleaved
/// per node as (eta_i, Gamma_i).
std::vector<double> residual(const State& s_new, const State& s_old, double dt, const Problem& pb);

/// Finite-difference Jacobian of the residual with respect to s_new, in
/// banded storage with the interleaved unknown ordering. Columns are probed
/// in groups of nodes far enough apart that their stencils never overlap.
BandedMatrix jacobian_fd(const State& s, double dt, const StepConfig& cfg, const Problem& pb);

struct StepResult {
  State state;
  StepReport report;
};

/// One backward-Euler step solved by newton_iters Newton updates.
StepResult advance(const State& s, const StepConfig& cfg, const Problem& pb);

struct Snapshot {
  double time = 0.0;
  State state;
  StepReport report; ///< report of the step that landed on this time
};

struct RunSummary {
  std::size_t steps = 0;
  double max_step_film_drift = 0.0;
  double max_step_surfactant_drift = 0.0;
  double film_mass_drift = 0.0;       ///< relative, final vs initial
  double surfactant_mass_drift = 0.0; ///< relative, final vs initial
  double max_residual_after = 0.0;
};

struct RunResult {
  std::vector<Snapshot> snapshots; ///< initial state first, then each requested time
  State final_state;
  RunSummary summary;
  std::optional<std::string> failure; ///< set when the run stopped early
};

/// Steps from s0.time to t_end. Steps are shortened so that every snapshot
/// time and t_end are hit exactly. Solver failures end the run and are
/// reported through RunResult::failure with the snapshots gathered so far.
RunResult run_simulation(const State& s0, double t_end, std::span<const double> snapshot_times,
                         const StepConfig& cfg, const Problem& pb);

} // namespace lubrisim

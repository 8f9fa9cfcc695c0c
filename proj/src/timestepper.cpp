#include "lubrisim/timestepper.hpp"

#include "lubrisim/errors.hpp"
#include "lubrisim/models.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace lubrisim {

namespace {

constexpr std::size_t kBlock = 2; // unknowns per node

double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double relative_change(double before, double after) {
  const double scale = std::max(std::abs(before), 1e-300);
  return std::abs(after - before) / scale;
}

/// Greedy colouring of nodes so that same-coloured nodes are more than
/// 2 * reach apart; their stencils then never share a row.
std::vector<std::vector<std::size_t>> probe_groups(const Grid& grid, std::size_t reach) {
  const std::size_t n = grid.size();
  std::vector<int> colour(n, -1);
  int n_colours = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<bool> taken(static_cast<std::size_t>(n_colours) + 1, false);
    for (std::size_t i = 0; i < n; ++i)
      if (colour[i] >= 0 && grid.distance(i, j) <= 2 * reach) taken[static_cast<std::size_t>(colour[i])] = true;
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    colour[j] = c;
    n_colours = std::max(n_colours, c + 1);
  }
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(n_colours));
  for (std::size_t j = 0; j < n; ++j) groups[static_cast<std::size_t>(colour[j])].push_back(j);
  return groups;
}

} // namespace

void StepConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError(fmt::format("dt must be positive, got {}", dt));
  if (newton_iters < 1)
    throw DomainError(fmt::format("newton_iters must be at least 1, got {}", newton_iters));
  if (!(newton_tol >= 0.0)) throw DomainError("newton_tol must be non-negative");
  if (!(fd_epsilon > 0.0)) throw DomainError("fd_epsilon must be positive");
}

std::vector<double> residual(const State& s_new, const State& s_old, double dt, const Problem& pb) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  s_old.validate(pb.ops.grid());
  const auto r = rhs(pb.variant, s_new, pb.params, pb.ops);
  const std::size_t n = pb.ops.size();
  std::vector<double> out(kBlock * n);
  for (std::size_t i = 0; i < n; ++i) {
    out[kBlock * i] = (s_new.eta[i] - s_old.eta[i]) / dt - r.deta_dt[i];
    out[kBlock * i + 1] = (s_new.gamma[i] - s_old.gamma[i]) / dt - r.dgamma_dt[i];
  }
  return out;
}

BandedMatrix jacobian_fd(const State& s, double dt, const StepConfig& cfg, const Problem& pb) {
  cfg.validate();
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const auto& grid = pb.ops.grid();
  const std::size_t n = grid.size();
  const std::size_t reach = kStencilReach;
  const std::size_t band = kBlock * reach + 1;

  BandedMatrix jac(kBlock * n, band, band, grid.periodic());
  const auto base = flux_form(pb.variant, s, pb.params, pb.ops);
  const auto groups = probe_groups(grid, reach);

  // owner[i]: the probed node whose stencil covers row-node i
  std::vector<std::size_t> owner(n);
  std::vector<double> step(n);
  for (const auto& group : groups) {
    std::fill(owner.begin(), owner.end(), n);
    for (std::size_t j : group)
      for (std::size_t i = 0; i < n; ++i)
        if (grid.distance(i, j) <= reach) owner[i] = j;

    for (std::size_t comp = 0; comp < kBlock; ++comp) {
      State probe = s;
      auto& field = comp == 0 ? probe.eta : probe.gamma;
      for (std::size_t j : group) {
        step[j] = cfg.fd_epsilon * std::max(1.0, std::abs(field[j]));
        field[j] += step[j];
        step[j] = field[j] - (comp == 0 ? s.eta[j] : s.gamma[j]); // exactly representable step
      }
      const auto pert = flux_form(pb.variant, probe, pb.params, pb.ops);

      // differencing the face flux before its divergence keeps column sums of
      // the thickness rows at round-off level
      FaceField dflux{std::vector<double>(n + 1)};
      for (std::size_t f = 0; f <= n; ++f) dflux[f] = pert.eta_flux[f] - base.eta_flux[f];
      const auto deta = pb.ops.div_flux(dflux);

      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = owner[i];
        if (j == n) continue;
        const std::size_t col = kBlock * j + comp;
        const double h = step[j];
        jac(kBlock * i, col) = -deta[i] / h;
        jac(kBlock * i + 1, col) = -(pert.dgamma_dt[i] - base.dgamma_dt[i]) / h;
      }
    }
  }
  jac.add_to_diagonal(1.0 / dt);
  return jac;
}

StepResult advance(const State& s, const StepConfig& cfg, const Problem& pb) {
  cfg.validate();
  s.validate(pb.ops.grid());
  const std::size_t n = pb.ops.size();

  StepResult out{s, {}};
  State& next = out.state;
  next.time = s.time + cfg.dt;

  auto r = residual(next, s, cfg.dt, pb);
  out.report.residual_norm_before = max_norm(r);

  for (int it = 0; it < cfg.newton_iters; ++it) {
    const auto jac = jacobian_fd(next, cfg.dt, cfg, pb);
    std::vector<double> neg_r(r.size());
    std::transform(r.begin(), r.end(), neg_r.begin(), [](double v) { return -v; });
    const auto delta = jac.solve(neg_r);
    for (std::size_t i = 0; i < n; ++i) {
      next.eta[i] += delta[kBlock * i];
      next.gamma[i] += delta[kBlock * i + 1];
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!(next.eta[i] > kPositivityGuard)) throw PositivityError(i, next.eta[i]);

    r = residual(next, s, cfg.dt, pb);
    out.report.newton_iters_used = it + 1;
    out.report.residual_history.push_back(max_norm(r));
    if (cfg.newton_iters > 1 && max_norm(r) < cfg.newton_tol) break;
  }
  out.report.residual_norm_after = max_norm(r);
  out.report.film_mass_drift = relative_change(film_mass(pb.ops, s), film_mass(pb.ops, next));
  out.report.surfactant_mass_drift =
      relative_change(surfactant_mass(pb.ops, s), surfactant_mass(pb.ops, next));
  return out;
}

RunResult run_simulation(const State& s0, double t_end, std::span<const double> snapshot_times,
                         const StepConfig& cfg, const Problem& pb) {
  cfg.validate();
  s0.validate(pb.ops.grid());
  if (!std::isfinite(t_end) || t_end < s0.time)
    throw DomainError(fmt::format("t_end {} precedes the initial time {}", t_end, s0.time));
  if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
    throw DomainError("snapshot times must be sorted");
  for (double t : snapshot_times)
    if (t > t_end || t < s0.time)
      throw DomainError(fmt::format("snapshot time {} lies outside [{}, {}]", t, s0.time, t_end));

  RunResult out;
  out.snapshots.push_back(Snapshot{s0.time, s0, {}});
  const double mass0 = film_mass(pb.ops, s0);
  const double surf0 = surfactant_mass(pb.ops, s0);

  // stop times in order, without duplicates and without the start time
  std::vector<double> stops;
  for (double t : snapshot_times)
    if (t > s0.time && (stops.empty() || t > stops.back())) stops.push_back(t);
  if (stops.empty() || stops.back() < t_end) stops.push_back(t_end);

  State current = s0;
  auto record = [&](const StepReport& rep) {
    auto& sum = out.summary;
    ++sum.steps;
    sum.max_step_film_drift = std::max(sum.max_step_film_drift, rep.film_mass_drift);
    sum.max_step_surfactant_drift = std::max(sum.max_step_surfactant_drift, rep.surfactant_mass_drift);
    sum.max_residual_after = std::max(sum.max_residual_after, rep.residual_norm_after);
  };

  try {
    for (double stop : stops) {
      if (stop <= current.time) continue;
      StepReport last{};
      while (current.time < stop) {
        StepConfig step_cfg = cfg;
        const double remaining = stop - current.time;
        const bool lands = cfg.dt >= remaining * (1.0 - 1e-12);
        if (lands) step_cfg.dt = remaining;
        auto res = advance(current, step_cfg, pb);
        current = std::move(res.state);
        if (lands) current.time = stop;
        last = res.report;
        record(last);
      }
      const bool requested = std::binary_search(snapshot_times.begin(), snapshot_times.end(), stop);
      if (requested) out.snapshots.push_back(Snapshot{current.time, current, last});
    }
  } catch (const PositivityError& e) {
    out.failure = fmt::format("stopped at t = {}: {}", current.time, e.what());
  } catch (const LinearAlgebraError& e) {
    out.failure = fmt::format("stopped at t = {}: {}", current.time, e.what());
  }

  out.summary.film_mass_drift = relative_change(mass0, film_mass(pb.ops, current));
  out.summary.surfactant_mass_drift = relative_change(surf0, surfactant_mass(pb.ops, current));
  out.final_state = std::move(current);
  return out;
}

} // namespace lubrisim

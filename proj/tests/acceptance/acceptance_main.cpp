#include "lubrisim/commands.hpp"
#include "lubrisim/fields.hpp"
#include "lubrisim/models.hpp"
#include "lubrisim/scenario.hpp"
#include "lubrisim/stability.hpp"
#include "lubrisim/timestepper.hpp"

#include "test_support.hpp"

#include <chrono>
#include <fmt/format.h>
#include <functional>

using namespace lubrisim;
using namespace lubrisim::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double surface_amplitude(const State& s) {
  const auto [lo, hi] = std::minmax_element(s.eta.begin(), s.eta.end());
  return 0.5 * (*hi - *lo);
}

double correlation(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

Outcome fixed_point() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (auto b : {Boundary::no_flux_symmetric, Boundary::periodic}) {
    const StencilOps ops(Grid(97, 15.0 * std::numbers::pi, b));
    const auto flat = State::uniform(ops.grid());
    for (auto v : {ModelVariant::full_cm, ModelVariant::low_order_cm, ModelVariant::de_wit})
      for (double theta : {0.0, 0.25, 0.5, 1.0, std::numbers::pi / 2, 2.0, std::numbers::pi})
        for (auto form : {DiffusionForm::geometric, DiffusionForm::plain})
          for (unsigned mask = 0; mask < (1u << 7); ++mask) {
            Params p;
            p.bond = 0.5;
            p.incline = theta;
            p.diffusion_form = form;
            p.toggles = TermToggles::all_off();
            unsigned bit = 0;
            for (auto g : kAllTermGroups) p.toggles.set(g, (mask >> bit++) & 1u);
            const auto r = rhs(v, flat, p, ops);
            worst = std::max({worst, max_abs(r.deta_dt), max_abs(r.dgamma_dt)});
          }
  }
  const double wall = seconds_since(t0);
  return {worst < 1e-14 && wall < 1.0, fmt::format("max|rhs| = {:.3e} (< 1e-14), {:.3f} s (< 1 s)", worst, wall)};
}

Outcome dispersion() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uk(0.0, 2.0);
  const double peclets[] = {0.0, 1e-4, 1.0 / 300.0, 1.0 / 3.0};
  double worst_sum = 0.0, worst_prod = 0.0, max_real = -1.0;
  for (int i = 0; i < 200; ++i) {
    const double k = 2.0 - uk(rng);
    const double ds = peclets[i % 4];
    const auto c = stability::char_poly_coeffs(k, ds);
    const auto d = stability::dispersion(k, ds);
    worst_sum = std::max(worst_sum, std::abs(d.lambda_fast + d.lambda_slow + c.c1) / c.c1);
    worst_prod = std::max(worst_prod, std::abs(d.lambda_fast * d.lambda_slow - c.c0) / c.c0);
    max_real = std::max({max_real, d.lambda_fast, d.lambda_slow});
  }
  // 40-digit quadratic-formula oracle for k = 1, delta_s = 0
  const double oracle_slow = -0.065741454089335117813, oracle_fast = -1.2675918792439982155;
  const auto spot = stability::dispersion(1.0, 0.0);
  const double spot_err = std::max(std::abs(spot.lambda_slow - oracle_slow), std::abs(spot.lambda_fast - oracle_fast));
  const double literal_dev =
      std::max(std::abs(spot.lambda_slow - -0.065739), std::abs(spot.lambda_fast - -1.267594));
  const bool pass = worst_sum < 1e-12 && worst_prod < 1e-12 && max_real <= 0.0 && spot_err < 1e-6;
  return {pass, fmt::format("Vieta sum/product rel err {:.1e}/{:.1e} (< 1e-12), max Re(lambda) = {:.3e}; "
                            "k=1: lambda = {{{:.9f}, {:.9f}}}, oracle err {:.1e} (< 1e-6), "
                            "deviation from printed {{-0.065739, -1.267594}}: {:.1e}",
                            worst_sum, worst_prod, max_real, spot.lambda_slow, spot.lambda_fast, spot_err, literal_dev)};
}

Outcome linearized_decay() {
  const auto t0 = std::chrono::steady_clock::now();
  const double k = 0.2, inv_pe = 1e-4, eps = 1e-6;
  const auto d = stability::dispersion(k, inv_pe);
  const Grid g(128, 10.0 * std::numbers::pi, Boundary::periodic);
  Params p;
  p.bond = 0.0;
  p.hamaker = 0.0;
  p.inv_peclet = inv_pe;
  const Problem pb{ModelVariant::full_cm, p, StencilOps(g)};
  const auto mode = sample(g, [&](double x) { return std::cos(k * x); });
  auto amplitude = [&](const State& s) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      num += (s.eta[i] - 1.0) * mode[i];
      den += mode[i] * mode[i];
    }
    return num / den;
  };
  State s = State::uniform(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    s.eta[i] += eps * mode[i];
    s.gamma[i] += eps * d.ratio_slow() * mode[i];
  }
  StepConfig cfg;
  cfg.dt = 0.05 / std::abs(d.lambda_fast);
  const double a0 = amplitude(s);
  for (int n = 0; n < 50; ++n) s = advance(s, cfg, pb).state;
  const double rate = std::log(amplitude(s) / a0) / (50.0 * cfg.dt);
  const double rel = std::abs(rate - d.lambda_slow) / std::abs(d.lambda_slow);
  const double wall = seconds_since(t0);
  return {rel < 0.02 && wall < 10.0,
          fmt::format("rate {:.6e} vs lambda_slow {:.6e}, rel err {:.2e} (< 2%), dt = {:.4f}, {:.2f} s (< 10 s)", rate,
                      d.lambda_slow, rel, cfg.dt, wall)};
}

Outcome conservation() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sc = preset("fig2");
  const auto run = run_simulation(sc.initial_state(), 1e5, {}, sc.step, sc.problem());
  const double wall = seconds_since(t0);
  const double film = std::abs(run.summary.film_mass_drift);
  const double surf = std::abs(run.summary.surfactant_mass_drift);
  const bool pass = !run.failure && run.summary.steps == 1000 && film < 1e-10 && surf < 1e-5 && wall < 10.0;
  return {pass, fmt::format("{} steps, film drift {:.2e} (< 1e-10), surfactant drift {:.2e} (< 1e-5), {:.2f} s (< 10 s)",
                            run.summary.steps, film, surf, wall)};
}

Outcome subset_identity() {
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const StencilOps ops(Grid(97, 15.0 * std::numbers::pi, i % 2 ? Boundary::periodic : Boundary::no_flux_symmetric));
    const auto s = random_state(rng, ops.grid(), 0.3);
    Params p;
    p.bond = 0.0;
    p.hamaker = 0.0;
    p.diffusion_form = DiffusionForm::plain;
    const auto lo = rhs(ModelVariant::low_order_cm, s, p, ops);
    const auto dw = rhs(ModelVariant::de_wit, s, p, ops);
    const double scale = std::max(max_abs(dw.deta_dt), max_abs(dw.dgamma_dt));
    worst = std::max(worst, std::max(max_abs_diff(lo.deta_dt, dw.deta_dt), max_abs_diff(lo.dgamma_dt, dw.dgamma_dt)) / scale);
  }
  return {worst < 1e-13, fmt::format("max relative difference {:.2e} (< 1e-13) over 100 states", worst)};
}

Outcome peclet_trend() {
  const std::vector<double> peclet{3.0, 30.0, 300.0};
  const auto rep = compare_variants(preset("fig2"), ModelVariant::full_cm, ModelVariant::de_wit, peclet, 10.0);
  const auto& e = rep.entries;
  const bool pass = e[0].linf_gamma > e[1].linf_gamma && e[1].linf_gamma > e[2].linf_gamma;
  return {pass, fmt::format("Linf(Gamma) at t=10 for P=3,30,300: {:.4e}, {:.4e}, {:.4e} (must strictly decrease)",
                            e[0].linf_gamma, e[1].linf_gamma, e[2].linf_gamma)};
}

Outcome corrugation() {
  const auto sc = preset("fig4");
  const auto s0 = sc.initial_state();
  const auto dirty = run_simulation(s0, 300.0, {}, sc.step, sc.problem());
  auto clean_sc = sc;
  clean_sc.params.tension_slope = 0.0;
  const auto clean = run_simulation(s0, 300.0, {}, clean_sc.step, clean_sc.problem());
  const auto early = run_simulation(s0, 15.0, {}, sc.step, sc.problem());
  if (dirty.failure || clean.failure || early.failure) return {false, "simulation failed"};
  const double ratio = surface_amplitude(dirty.final_state) / surface_amplitude(clean.final_state);
  const double corr = correlation(early.final_state.gamma, early.final_state.eta);
  return {ratio > 2.0 && corr < 0.0,
          fmt::format("amplitude at t=300 contaminated/clean = {:.4e}/{:.4e} = {:.1f} (> 2); corr(Gamma-1, eta-1) at "
                      "t=15 = {:.4f} (< 0)",
                      surface_amplitude(dirty.final_state), surface_amplitude(clean.final_state), ratio, corr)};
}

Outcome nondimensional() {
  const auto p = nondimensionalize(DimensionalInputs{});
  const double er = std::abs(p.reynolds - 3.0) / 3.0;
  const double eh = std::abs(p.hamaker - 1e-3) / 1e-3;
  const double ed = std::abs(p.inv_peclet - 1.0 / 300.0) * 300.0;
  const bool pass = er <= 1e-15 && eh <= 1e-15 && ed <= 1e-15;
  return {pass, fmt::format("R = {:.17g}, H = {:.17g}, delta_s = {:.17g} (rel err <= 1e-15); B formula = {:.4e} vs "
                            "quoted {:.1e} (factor {:.1f}, logged)",
                            p.reynolds, p.hamaker, p.inv_peclet, p.bond, kQuotedBond, p.bond / kQuotedBond)};
}

Outcome flux_consistency() {
  const double k = 0.2;
  const StencilOps ops(Grid(128, 10.0 * std::numbers::pi, Boundary::periodic));
  const State s{sample(ops.grid(), [&](double x) { return 1.0 + 0.01 * std::cos(k * x); }),
                sample(ops.grid(), [&](double x) { return 1.0 + 0.01 * std::sin(k * x); }), 0.0};
  Params p;
  p.toggles = TermToggles::all_off();
  p.toggles.marangoni = p.toggles.gravity_tangential = true;
  p.bond = 0.05;
  p.incline = 0.3;
  auto q = depth_flux(s, p, ops);
  for (double& v : q) v = -v;
  const auto from_fields = ops.div_flux(q, Parity::odd);
  const auto bd = rhs_breakdown(ModelVariant::full_cm, s, p, ops);
  std::vector<double> groups(ops.size());
  for (std::size_t i = 0; i < groups.size(); ++i)
    groups[i] = bd.find("marangoni")->deta_dt[i] + bd.find("gravity_tangential")->deta_dt[i];
  const double rel = max_abs_diff(from_fields, groups) / max_abs(groups);
  return {rel < 0.05, fmt::format("relative Linf difference {:.3e} (< 5%)", rel)};
}

Outcome discretization_order() {
  auto f0 = [](double x) { return std::exp(std::sin(x)); };
  auto f1 = [&](double x) { return std::cos(x) * f0(x); };
  auto f2 = [&](double x) { return (std::cos(x) * std::cos(x) - std::sin(x)) * f0(x); };
  auto f3 = [&](double x) {
    const double c = std::cos(x), s = std::sin(x);
    return (c * c * c - 3.0 * s * c - c) * f0(x);
  };
  double worst = 1e300;
  std::string detail;
  for (int order = 1; order <= 3; ++order) {
    double prev = 0.0;
    detail += fmt::format("{}d{}:", order > 1 ? "; " : "", order);
    for (std::size_t n : {32u, 64u, 128u, 256u}) {
      const StencilOps ops(Grid(n, 2.0 * std::numbers::pi, Boundary::periodic));
      const auto f = sample(ops.grid(), f0);
      std::vector<double> got, want;
      if (order == 1) got = ops.d1(f), want = sample(ops.grid(), f1);
      if (order == 2) got = ops.d2(f), want = sample(ops.grid(), f2);
      if (order == 3) got = ops.d3(f), want = sample(ops.grid(), f3);
      const double err = max_abs_diff(got, want);
      if (prev > 0.0) {
        const double p = std::log2(prev / err);
        worst = std::min(worst, p);
        detail += fmt::format(" {:.3f}", p);
      }
      prev = err;
    }
  }
  return {worst >= 1.9, fmt::format("observed orders {} (min {:.3f} >= 1.9)", detail, worst)};
}

} // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"fixed point of the flat film", fixed_point},
      {"dispersion relation", dispersion},
      {"linearized decay rate", linearized_decay},
      {"conservation on the drop spreading run", conservation},
      {"low-order/reference model identity", subset_identity},
      {"model difference trend with Peclet number", peclet_trend},
      {"corrugation persistence", corrugation},
      {"nondimensional groups", nondimensional},
      {"depth flux consistency", flux_consistency},
      {"discretization order", discretization_order},
  };
  int failures = 0;
  int id = 0;
  for (const auto& [name, check] : criteria) {
    ++id;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    if (!o.pass) ++failures;
    fmt::print("{} [{:2}] {}: {}\n", o.pass ? "PASS" : "FAIL", id, name, o.detail);
  }
  fmt::print("{}/{} criteria passed\n", 10 - failures, 10);
  return failures == 0 ? 0 : 1;
}

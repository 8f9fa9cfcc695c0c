#pragma once

#include "lubrisim/core.hpp"
#include "lubrisim/discretization.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lubrisim {

/// Time derivatives of the film thickness and the surfactant concentration.
struct Rhs {
  std::vector<double> deta_dt;
  std::vector<double> dgamma_dt;
};

struct TermContribution {
  std::string name;
  TermGroup group;
  std::vector<double> deta_dt;
  std::vector<double> dgamma_dt;
};

/// Per-group split of the right-hand side. The displayed groups of the
/// evolution equations are reported separately; the two inertia/gravity/van
/// der Waals cross groups share the inertia_cross_hrb toggle.
struct TermBreakdown {
  std::vector<TermContribution> terms;

  const TermContribution* find(std::string_view name) const;
  Rhs sum() const;
};

/// The thickness equation is pure divergence form in every variant; the
/// timestepper differentiates the face flux rather than its divergence so
/// that the Jacobian conserves film mass to round-off.
struct FluxForm {
  FaceField eta_flux;              ///< deta/dt = div(eta_flux)
  std::vector<double> dgamma_dt;
};

Rhs rhs(ModelVariant variant, const State& s, const Params& p, const StencilOps& ops);

TermBreakdown rhs_breakdown(ModelVariant variant, const State& s, const Params& p,
                            const StencilOps& ops);

/// Names and toggles of the displayed term groups of a variant, in order.
std::vector<std::pair<std::string_view, TermGroup>> variant_groups(ModelVariant variant);

FluxForm flux_form(ModelVariant variant, const State& s, const Params& p, const StencilOps& ops);

/// Largest distance (in nodes) between a node and any node its right-hand
/// side depends on.
inline constexpr std::size_t kStencilReach = 2;

} // namespace lubrisim

#include "lubrisim/core.hpp"

#include "lubrisim/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace lubrisim {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError(fmt::format("{} must be positive and finite, got {}", what, value));
}

} // namespace

std::string_view to_string(TermGroup group) {
  switch (group) {
  case TermGroup::marangoni: return "marangoni";
  case TermGroup::capillary: return "capillary";
  case TermGroup::gravity_tangential: return "gravity_tangential";
  case TermGroup::gravity_normal: return "gravity_normal";
  case TermGroup::van_der_waals: return "van_der_waals";
  case TermGroup::inertia_cross_hrb: return "inertia_cross_hrb";
  case TermGroup::diffusion: return "diffusion";
  }
  return "?";
}

TermGroup term_group_from_string(std::string_view name) {
  for (auto g : kAllTermGroups)
    if (to_string(g) == name) return g;
  throw DomainError(fmt::format("unknown term group '{}'", name));
}

bool TermToggles::enabled(TermGroup group) const {
  switch (group) {
  case TermGroup::marangoni: return marangoni;
  case TermGroup::capillary: return capillary;
  case TermGroup::gravity_tangential: return gravity_tangential;
  case TermGroup::gravity_normal: return gravity_normal;
  case TermGroup::van_der_waals: return van_der_waals;
  case TermGroup::inertia_cross_hrb: return inertia_cross_hrb;
  case TermGroup::diffusion: return diffusion;
  }
  return false;
}

void TermToggles::set(TermGroup group, bool on) {
  switch (group) {
  case TermGroup::marangoni: marangoni = on; break;
  case TermGroup::capillary: capillary = on; break;
  case TermGroup::gravity_tangential: gravity_tangential = on; break;
  case TermGroup::gravity_normal: gravity_normal = on; break;
  case TermGroup::van_der_waals: van_der_waals = on; break;
  case TermGroup::inertia_cross_hrb: inertia_cross_hrb = on; break;
  case TermGroup::diffusion: diffusion = on; break;
  }
}

TermToggles TermToggles::all_off() {
  TermToggles t;
  for (auto g : kAllTermGroups) t.set(g, false);
  return t;
}

void Params::validate() const {
  for (double v : {reynolds, bond, hamaker, inv_peclet, tension_slope, incline})
    if (!std::isfinite(v)) throw DomainError("parameters must be finite");
  if (inv_peclet < 0.0)
    throw DomainError(fmt::format("inverse Peclet number must be non-negative, got {}", inv_peclet));
}

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::periodic ? "periodic" : "no_flux";
}

Boundary boundary_from_string(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "no_flux" || name == "no_flux_symmetric") return Boundary::no_flux_symmetric;
  throw DomainError(fmt::format("unknown boundary kind '{}'", name));
}

Grid::Grid(std::size_t n_nodes, double length, Boundary boundary)
    : n_(n_nodes), length_(length), dx_(0.0), boundary_(boundary) {
  if (n_nodes < kMinNodes)
    throw DomainError(fmt::format("grid needs at least {} nodes, got {}", kMinNodes, n_nodes));
  require_positive(length, "domain length");
  dx_ = boundary == Boundary::periodic ? length / static_cast<double>(n_nodes)
                                       : length / static_cast<double>(n_nodes - 1);
}

std::vector<double> Grid::coordinates() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

std::vector<double> Grid::weights() const {
  std::vector<double> w(n_, dx_);
  if (!periodic()) {
    w.front() = 0.5 * dx_;
    w.back() = 0.5 * dx_;
  }
  return w;
}

std::size_t Grid::distance(std::size_t i, std::size_t j) const noexcept {
  std::size_t d = i > j ? i - j : j - i;
  if (periodic() && n_ - d < d) d = n_ - d;
  return d;
}

void State::validate(const Grid& grid) const {
  if (eta.size() != grid.size() || gamma.size() != grid.size())
    throw DomainError(fmt::format("state has {}/{} entries, grid has {} nodes", eta.size(),
                                  gamma.size(), grid.size()));
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (!std::isfinite(eta[i]) || !std::isfinite(gamma[i]))
      throw DomainError(fmt::format("non-finite state value at node {}", i));
  }
  for (std::size_t i = 0; i < eta.size(); ++i)
    if (eta[i] <= kPositivityGuard) throw PositivityError(i, eta[i]);
}

State State::uniform(const Grid& grid, double eta, double gamma) {
  return State{std::vector<double>(grid.size(), eta), std::vector<double>(grid.size(), gamma), 0.0};
}

std::string_view to_string(ModelVariant variant) {
  switch (variant) {
  case ModelVariant::full_cm: return "full";
  case ModelVariant::low_order_cm: return "loworder";
  case ModelVariant::de_wit: return "dewit";
  }
  return "?";
}

ModelVariant variant_from_string(std::string_view name) {
  if (name == "full") return ModelVariant::full_cm;
  if (name == "loworder") return ModelVariant::low_order_cm;
  if (name == "dewit") return ModelVariant::de_wit;
  throw DomainError(fmt::format("unknown model variant '{}' (expected full|loworder|dewit)", name));
}

Params nondimensionalize(const DimensionalInputs& d) {
  require_positive(d.surface_tension, "surface tension");
  require_positive(d.viscosity, "viscosity");
  require_positive(d.density, "density");
  require_positive(d.surface_diffusivity, "surface diffusivity");
  require_positive(d.film_thickness, "film thickness");
  require_positive(d.hamaker_constant, "Hamaker constant");
  require_positive(d.gravity, "gravity");

  const double mu2 = d.viscosity * d.viscosity;
  Params p;
  p.reynolds = d.surface_tension * d.density * d.film_thickness / mu2;
  p.bond = d.density * d.gravity * d.film_thickness * d.film_thickness / d.surface_tension;
  p.hamaker = d.hamaker_constant * d.density / (d.film_thickness * mu2);
  p.inv_peclet = d.surface_diffusivity * d.viscosity / (d.surface_tension * d.film_thickness);
  return p;
}

std::vector<double> surface_tension(std::span<const double> gamma_field, double tension_slope) {
  std::vector<double> out(gamma_field.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 1.0 + tension_slope * (1.0 - gamma_field[i]);
  return out;
}

} // namespace lubrisim

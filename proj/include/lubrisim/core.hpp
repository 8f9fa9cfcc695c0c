#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lubrisim {

/// Film thickness below this value is treated as rupture.
inline constexpr double kPositivityGuard = 1e-8;

/// Addressable groups of terms in the evolution equations. Each group can be
/// switched off at runtime to delete it from the model.
enum class TermGroup {
  marangoni,
  capillary,
  gravity_tangential,
  gravity_normal,
  van_der_waals,
  inertia_cross_hrb,
  diffusion,
};

inline constexpr TermGroup kAllTermGroups[] = {
    TermGroup::marangoni,      TermGroup::capillary,         TermGroup::gravity_tangential,
    TermGroup::gravity_normal, TermGroup::van_der_waals,     TermGroup::inertia_cross_hrb,
    TermGroup::diffusion,
};

std::string_view to_string(TermGroup group);
TermGroup term_group_from_string(std::string_view name);

struct TermToggles {
  bool marangoni = true;
  bool capillary = true;
  bool gravity_tangential = true;
  bool gravity_normal = true;
  bool van_der_waals = true;
  bool inertia_cross_hrb = true;
  bool diffusion = true;

  bool enabled(TermGroup group) const;
  void set(TermGroup group, bool on);

  static TermToggles all_off();

  bool operator==(const TermToggles&) const = default;
};

/// Surface diffusion either carries the slope metric factors or is the plain
/// Laplacian used by the reference lubrication model.
enum class DiffusionForm { geometric, plain };

/// Nondimensional physical constants of the contaminated film.
struct Params {
  double reynolds = 3.0;
  double bond = 3e-11;
  double hamaker = 1e-3;
  double inv_peclet = 1.0 / 300.0;
  double tension_slope = 1.0; ///< A in gamma = 1 + A (1 - Gamma)
  double incline = 0.0;       ///< substrate angle theta [rad]
  DiffusionForm diffusion_form = DiffusionForm::geometric;
  TermToggles toggles{};

  void validate() const;

  bool operator==(const Params&) const = default;
};

enum class Boundary { no_flux_symmetric, periodic };

std::string_view to_string(Boundary boundary);
Boundary boundary_from_string(std::string_view name);

/// Uniform vertex-centred mesh on [0, L].
///
/// With no-flux walls the end nodes sit on the walls and dx = L / (n - 1).
/// A periodic mesh stores each point once, so node n would coincide with
/// node 0 and dx = L / n.
class Grid {
public:
  static constexpr std::size_t kMinNodes = 5;

  Grid(std::size_t n_nodes, double length, Boundary boundary);

  std::size_t size() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return dx_; }
  Boundary boundary() const noexcept { return boundary_; }
  bool periodic() const noexcept { return boundary_ == Boundary::periodic; }

  double x(std::size_t i) const noexcept { return static_cast<double>(i) * dx_; }
  std::vector<double> coordinates() const;

  /// Quadrature weights: trapezoid on walled meshes, uniform on periodic.
  std::vector<double> weights() const;

  /// Node-to-node distance, wrapping around on periodic meshes.
  std::size_t distance(std::size_t i, std::size_t j) const noexcept;

  bool operator==(const Grid&) const = default;

private:
  std::size_t n_;
  double length_;
  double dx_;
  Boundary boundary_;
};

/// Film thickness and surfactant concentration at one time level.
struct State {
  std::vector<double> eta;
  std::vector<double> gamma;
  double time = 0.0;

  std::size_t size() const noexcept { return eta.size(); }

  /// Throws DomainError on a size mismatch or non-finite entries and
  /// PositivityError if eta is not above the guard.
  void validate(const Grid& grid) const;

  static State uniform(const Grid& grid, double eta = 1.0, double gamma = 1.0);
};

enum class ModelVariant { full_cm, low_order_cm, de_wit };

std::string_view to_string(ModelVariant variant);
ModelVariant variant_from_string(std::string_view name);

/// Dimensional CGS inputs of a coating flow.
struct DimensionalInputs {
  double surface_tension = 30.0;  ///< dyn/cm
  double viscosity = 1e-2;        ///< g/(cm s)
  double density = 1.0;           ///< g/cm^3
  double surface_diffusivity = 1e-4; ///< cm^2/s
  double film_thickness = 1e-5;   ///< cm
  double hamaker_constant = 1e-12; ///< erg
  double gravity = 981.0;         ///< cm/s^2
};

/// Bond number quoted alongside the CGS fluid data; the defining formula
/// with standard gravity gives a different value.
inline constexpr double kQuotedBond = 3e-11;

Params nondimensionalize(const DimensionalInputs& d);

/// gamma = 1 + A (1 - Gamma), pointwise.
std::vector<double> surface_tension(std::span<const double> gamma_field, double tension_slope);

} // namespace lubrisim

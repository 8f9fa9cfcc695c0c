#pragma once

#include "lubrisim/core.hpp"
#include "lubrisim/timestepper.hpp"

#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lubrisim {

enum class InitialKind { surfactant_drop, corrugation, custom };

std::string_view to_string(InitialKind kind);

/// Initial profiles. A surfactant drop is a C1 raised-cosine bump of
/// concentration on a flat film; a corrugation is a single cosine ripple of
/// the surface under a uniform surfactant layer.
struct InitialCondition {
  InitialKind kind = InitialKind::surfactant_drop;
  double base_eta = 1.0;
  double base_gamma = 1.0;
  std::optional<double> drop_center; ///< defaults to the domain midpoint
  double drop_half_width = 2.0;
  double drop_excess = 1.0;
  double amplitude = 0.1;
  double wavenumber = 0.5;
  std::vector<double> eta;   ///< custom profiles only
  std::vector<double> gamma;

  bool operator==(const InitialCondition&) const = default;
};

struct Scenario {
  std::string name = "custom";
  std::size_t nodes = 97;
  double length = 15.0 * std::numbers::pi;
  Boundary boundary = Boundary::no_flux_symmetric;
  InitialCondition initial;
  Params params;
  ModelVariant variant = ModelVariant::full_cm;
  StepConfig step;
  double t_end = 1000.0;
  std::vector<double> snapshots{1.0, 10.0, 100.0, 1000.0};

  /// Throws ConfigError naming the offending field.
  void validate() const;

  Grid grid() const;
  State initial_state() const;
  Problem problem() const;

  bool operator==(const Scenario&) const = default;
};

/// Reads a JSON scenario document. Missing keys take the defaults of the
/// reference coating-flow run; unknown keys are rejected.
Scenario load_config(const std::filesystem::path& path);
Scenario parse_config(std::string_view text);
std::string dump_config(const Scenario& s);

struct PresetInfo {
  std::string_view name;
  std::string_view description;
};
const std::vector<PresetInfo>& preset_names();

/// "fig2": surfactant drop spreading on a flat film; "fig3" and "fig4": a
/// corrugated film under uniform surfactant, early and late snapshots.
Scenario preset(std::string_view name);

/// Command-line overrides applied on top of a loaded scenario.
struct Overrides {
  std::optional<ModelVariant> variant;
  std::optional<double> inv_peclet;
  std::optional<double> t_end;
  std::optional<double> dt;
  std::optional<std::size_t> nodes;
};

void apply_overrides(Scenario& s, const Overrides& o);

} // namespace lubrisim

#pragma once

#include "lubrisim/core.hpp"
#include "lubrisim/discretization.hpp"

#include <ostream>
#include <span>
#include <vector>

namespace lubrisim {

/// Velocity and pressure at one point of the film; zeta = y / eta runs from
/// the substrate (0) to the free surface (1).
struct FieldSample {
  double x = 0.0;
  double zeta = 0.0;
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
};

/// Evaluates the slaved velocity and pressure fields at every node for each
/// requested zeta level. Samples are ordered node-major. Diagnostic only.
std::vector<FieldSample> reconstruct(const State& s, const Params& p, const StencilOps& ops,
                                     std::span<const double> zeta_levels);

/// Volume flux Q = eta * int_0^1 u dzeta, integrated exactly (u is a
/// polynomial in zeta).
std::vector<double> depth_flux(const State& s, const Params& p, const StencilOps& ops);

/// d/dzeta of u at the given level (exact).
std::vector<double> shear(const State& s, const Params& p, const StencilOps& ops, double zeta);

/// d^2/dzeta^2 of u at the given level (exact).
std::vector<double> shear_rate_change(const State& s, const Params& p, const StencilOps& ops,
                                      double zeta);

void write_fields_csv(std::ostream& os, const std::vector<FieldSample>& samples);

} // namespace lubrisim

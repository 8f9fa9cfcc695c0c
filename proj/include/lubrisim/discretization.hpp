#pragma once

#include "lubrisim/core.hpp"

#include <span>
#include <vector>

namespace lubrisim {

/// Reflection parity of a nodal field about a no-flux wall. Thickness and
/// concentration are even; slopes and fluxes are odd.
enum class Parity { even, odd };

/// Values on the n + 1 faces of a grid. Face i sits midway between nodes i-1
/// and i, so faces 0 and n straddle the boundary and use ghost nodes.
struct FaceField {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Second-order centred difference operators bound to a grid.
///
/// Boundaries are closed with two ghost nodes per side: even (or odd)
/// reflection about the end nodes for no-flux walls, wraparound for periodic
/// meshes. "Extended" arrays carry the ghosts: node i lives at index i + 2.
class StencilOps {
public:
  static constexpr std::size_t kGhosts = 2;

  explicit StencilOps(Grid grid) : grid_(grid) {}

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }

  std::vector<double> extend(std::span<const double> f, Parity parity = Parity::even) const;

  std::vector<double> d1(std::span<const double> f, Parity parity = Parity::even) const;
  std::vector<double> d2(std::span<const double> f, Parity parity = Parity::even) const;
  std::vector<double> d3(std::span<const double> f, Parity parity = Parity::even) const;

  /// Discrete dF/dx of a nodal flux. The weighted grid sum telescopes to the
  /// boundary fluxes and vanishes on periodic meshes and for odd fluxes on
  /// walled meshes.
  std::vector<double> div_flux(std::span<const double> flux, Parity parity = Parity::odd) const;

  /// Discrete dF/dx of a face flux: (F[i+1] - F[i]) / dx at node i.
  std::vector<double> div_flux(const FaceField& flux) const;

  /// Second derivative on an extended array; valid for the nodes -1..n, the
  /// outermost ghost entries are left at zero.
  std::vector<double> d2_extended(std::span<const double> ext) const;

  /// Face means and face gradients of an extended array whose entries for
  /// nodes -1..n are valid.
  FaceField face_average(std::span<const double> ext) const;
  FaceField face_gradient(std::span<const double> ext) const;

  /// Central first and second derivatives read directly off an extended array.
  std::vector<double> node_d1(std::span<const double> ext) const;
  std::vector<double> node_d2(std::span<const double> ext) const;

  /// Weighted grid sum (trapezoid on walled meshes).
  double integrate(std::span<const double> f) const;

private:
  void check_size(std::size_t n, const char* what) const;

  Grid grid_;
};

/// Integral of the film thickness over the domain.
double film_mass(const StencilOps& ops, const State& s);

/// Integral of Gamma sqrt(1 + eta_x^2): surfactant per unit substrate length.
double surfactant_mass(const StencilOps& ops, const State& s);

} // namespace lubrisim

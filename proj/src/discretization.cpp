#include "lubrisim/discretization.hpp"

#include "lubrisim/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace lubrisim {

void StencilOps::check_size(std::size_t n, const char* what) const {
  if (n != grid_.size())
    throw DomainError(fmt::format("{}: array has {} entries, grid has {} nodes", what, n, grid_.size()));
}

std::vector<double> StencilOps::extend(std::span<const double> f, Parity parity) const {
  check_size(f.size(), "extend");
  const std::size_t n = f.size();
  const std::size_t g = kGhosts;
  std::vector<double> ext(n + 2 * g);
  for (std::size_t i = 0; i < n; ++i) ext[i + g] = f[i];

  if (grid_.periodic()) {
    for (std::size_t j = 1; j <= g; ++j) {
      ext[g - j] = f[n - j];
      ext[g + n - 1 + j] = f[j - 1];
    }
  } else {
    const double sign = parity == Parity::even ? 1.0 : -1.0;
    for (std::size_t j = 1; j <= g; ++j) {
      ext[g - j] = sign * f[j];
      ext[g + n - 1 + j] = sign * f[n - 1 - j];
    }
  }
  return ext;
}

std::vector<double> StencilOps::node_d1(std::span<const double> ext) const {
  const std::size_t n = grid_.size();
  const double inv = 1.0 / (2.0 * grid_.dx());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (ext[i + 3] - ext[i + 1]) * inv;
  return out;
}

std::vector<double> StencilOps::node_d2(std::span<const double> ext) const {
  const std::size_t n = grid_.size();
  const double inv = 1.0 / (grid_.dx() * grid_.dx());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ((ext[i + 3] + ext[i + 1]) - 2.0 * ext[i + 2]) * inv;
  return out;
}

std::vector<double> StencilOps::d1(std::span<const double> f, Parity parity) const {
  return node_d1(extend(f, parity));
}

std::vector<double> StencilOps::d2(std::span<const double> f, Parity parity) const {
  return node_d2(extend(f, parity));
}

std::vector<double> StencilOps::d3(std::span<const double> f, Parity parity) const {
  const auto e = extend(f, parity);
  const std::size_t n = grid_.size();
  const double dx = grid_.dx();
  const double inv = 1.0 / (2.0 * dx * dx * dx);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = ((e[i + 4] - e[i]) - 2.0 * (e[i + 3] - e[i + 1])) * inv;
  return out;
}

std::vector<double> StencilOps::div_flux(std::span<const double> flux, Parity parity) const {
  return node_d1(extend(flux, parity));
}

std::vector<double> StencilOps::div_flux(const FaceField& flux) const {
  const std::size_t n = grid_.size();
  if (flux.size() != n + 1)
    throw DomainError(fmt::format("face flux has {} entries, expected {}", flux.size(), n + 1));
  const double inv = 1.0 / grid_.dx();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (flux[i + 1] - flux[i]) * inv;
  return out;
}

std::vector<double> StencilOps::d2_extended(std::span<const double> ext) const {
  const double inv = 1.0 / (grid_.dx() * grid_.dx());
  std::vector<double> out(ext.size(), 0.0);
  // neighbour sum first: mirrored ghosts then reproduce interior values bit for bit
  for (std::size_t m = 1; m + 1 < ext.size(); ++m)
    out[m] = ((ext[m + 1] + ext[m - 1]) - 2.0 * ext[m]) * inv;
  return out;
}

FaceField StencilOps::face_average(std::span<const double> ext) const {
  const std::size_t n = grid_.size();
  FaceField out{std::vector<double>(n + 1)};
  for (std::size_t i = 0; i <= n; ++i) out[i] = 0.5 * (ext[i + 1] + ext[i + 2]);
  return out;
}

FaceField StencilOps::face_gradient(std::span<const double> ext) const {
  const std::size_t n = grid_.size();
  const double inv = 1.0 / grid_.dx();
  FaceField out{std::vector<double>(n + 1)};
  for (std::size_t i = 0; i <= n; ++i) out[i] = (ext[i + 2] - ext[i + 1]) * inv;
  return out;
}

double StencilOps::integrate(std::span<const double> f) const {
  check_size(f.size(), "integrate");
  const auto w = grid_.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += w[i] * f[i];
  return sum;
}

double film_mass(const StencilOps& ops, const State& s) { return ops.integrate(s.eta); }

double surfactant_mass(const StencilOps& ops, const State& s) {
  const auto eta_x = ops.d1(s.eta);
  std::vector<double> density(s.gamma.size());
  for (std::size_t i = 0; i < density.size(); ++i)
    density[i] = s.gamma[i] * std::sqrt(1.0 + eta_x[i] * eta_x[i]);
  return ops.integrate(density);
}

} // namespace lubrisim

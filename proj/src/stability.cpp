#include "lubrisim/stability.hpp"

#include "lubrisim/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace lubrisim::stability {

namespace {

void check_inputs(double k, double inv_peclet, double tension_slope) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError(fmt::format("wavenumber must be >= 0, got {}", k));
  if (!(inv_peclet >= 0.0) || !std::isfinite(inv_peclet))
    throw DomainError(fmt::format("inverse Peclet number must be >= 0, got {}", inv_peclet));
  if (!(tension_slope >= 0.0) || !std::isfinite(tension_slope))
    throw DomainError(fmt::format("tension slope must be >= 0, got {}", tension_slope));
}

/// b/a of the eigenvector belonging to lambda. The thickness row gives the
/// ratio unless the Marangoni coupling vanishes, then the concentration row.
std::optional<double> amplitude_ratio(const ModeMatrix& m, double lambda) {
  if (m.eta_gamma != 0.0) return (lambda - m.eta_eta) / m.eta_gamma;
  const double denom = lambda - m.gamma_gamma;
  if (denom != 0.0) return m.gamma_eta / denom;
  return std::nullopt;
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

} // namespace

double DispersionResult::ratio_slow() const {
  if (!amp_ratio_slow) throw UndefinedRatioError(fmt::format("amplitude ratio undefined at k = {}", k));
  return *amp_ratio_slow;
}

double DispersionResult::ratio_fast() const {
  if (!amp_ratio_fast) throw UndefinedRatioError(fmt::format("amplitude ratio undefined at k = {}", k));
  return *amp_ratio_fast;
}

ModeMatrix mode_matrix(double k, double inv_peclet, double tension_slope) {
  check_inputs(k, inv_peclet, tension_slope);
  const double k2 = k * k, k4 = k2 * k2;
  return ModeMatrix{-k4 / 3.0, -0.5 * tension_slope * k2, -0.5 * k4,
                    -(tension_slope + inv_peclet) * k2};
}

CharPoly char_poly_coeffs(double k, double inv_peclet, double tension_slope) {
  check_inputs(k, inv_peclet, tension_slope);
  const double k2 = k * k, k4 = k2 * k2, k6 = k4 * k2;
  // trace and determinant of the mode matrix, simplified
  return CharPoly{k2 * tension_slope + inv_peclet * k2 + k4 / 3.0,
                  k6 * tension_slope / 12.0 + inv_peclet * k6 / 3.0};
}

DispersionResult dispersion(double k, double inv_peclet, double tension_slope) {
  const auto [c1, c0] = char_poly_coeffs(k, inv_peclet, tension_slope);
  DispersionResult out;
  out.k = k;

  const double disc = c1 * c1 - 4.0 * c0;
  if (disc >= 0.0) {
    // q carries the sign of -c1 so no cancellation occurs; roots are q and c0/q
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    if (q == 0.0) {
      out.lambda_fast = out.lambda_slow = 0.0;
    } else {
      const double r1 = q, r2 = c0 / q;
      out.lambda_fast = std::min(r1, r2);
      out.lambda_slow = std::max(r1, r2);
    }
  } else {
    out.lambda_fast = out.lambda_slow = -0.5 * c1;
    out.imag = 0.5 * std::sqrt(-disc);
  }

  if (k > 0.0 && out.imag == 0.0) {
    const auto m = mode_matrix(k, inv_peclet, tension_slope);
    out.amp_ratio_slow = amplitude_ratio(m, out.lambda_slow);
    out.amp_ratio_fast = amplitude_ratio(m, out.lambda_fast);
  }
  return out;
}

std::vector<DispersionResult> dispersion_scan(double k_min, double k_max, int n_points,
                                              double inv_peclet, double tension_slope) {
  if (!(k_min >= 0.0) || !(k_max > k_min))
    throw DomainError(fmt::format("need 0 <= k_min < k_max, got [{}, {}]", k_min, k_max));
  if (n_points < 2) throw DomainError(fmt::format("need at least 2 points, got {}", n_points));
  std::vector<DispersionResult> rows;
  rows.reserve(static_cast<std::size_t>(n_points));
  const double step = (k_max - k_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double k = i + 1 == n_points ? k_max : k_min + step * i;
    rows.push_back(dispersion(k, inv_peclet, tension_slope));
  }
  return rows;
}

void write_dispersion_csv(std::ostream& os, const std::vector<DispersionResult>& rows) {
  os << "k,lambda_slow,lambda_fast,ratio_slow,ratio_fast\n";
  for (const auto& r : rows) {
    os << format_number(r.k) << ',' << format_number(r.lambda_slow) << ','
       << format_number(r.lambda_fast) << ','
       << (r.amp_ratio_slow ? format_number(*r.amp_ratio_slow) : "nan") << ','
       << (r.amp_ratio_fast ? format_number(*r.amp_ratio_fast) : "nan") << '\n';
  }
}

} // namespace lubrisim::stability

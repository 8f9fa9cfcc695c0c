#pragma once

#include <optional>
#include <ostream>
#include <vector>

namespace lubrisim::stability {

/// lambda^2 + c1 lambda + c0 = 0 for modes exp(lambda t + i k x) about the
/// flat film with unit thickness and unit concentration.
struct CharPoly {
  double c1 = 0.0;
  double c0 = 0.0;
};

/// Growth rates of the two linear modes at one wavenumber. For a complex
/// pair both rates carry the common real part and `imag` holds |Im lambda|.
struct DispersionResult {
  double k = 0.0;
  double lambda_fast = 0.0;
  double lambda_slow = 0.0;
  double imag = 0.0;
  std::optional<double> amp_ratio_slow; ///< b/a, empty where undefined (k = 0)
  std::optional<double> amp_ratio_fast;

  double ratio_slow() const; ///< throws UndefinedRatioError when empty
  double ratio_fast() const;
};

/// The coefficients for surface-tension slope A; A = 1 reproduces the
/// classical contaminated-film linearization.
CharPoly char_poly_coeffs(double k, double inv_peclet, double tension_slope = 1.0);

/// Linear operator acting on the amplitudes (a, b) of thickness and
/// concentration: d/dt (a, b) = M (a, b).
struct ModeMatrix {
  double eta_eta, eta_gamma, gamma_eta, gamma_gamma;
};
ModeMatrix mode_matrix(double k, double inv_peclet, double tension_slope = 1.0);

DispersionResult dispersion(double k, double inv_peclet, double tension_slope = 1.0);

std::vector<DispersionResult> dispersion_scan(double k_min, double k_max, int n_points,
                                              double inv_peclet, double tension_slope = 1.0);

/// Columns k, lambda_slow, lambda_fast, ratio_slow, ratio_fast; undefined
/// ratios are written as nan.
void write_dispersion_csv(std::ostream& os, const std::vector<DispersionResult>& rows);

} // namespace lubrisim::stability

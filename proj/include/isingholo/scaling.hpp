#pragma once

#include <string>
#include <vector>

#include "isingholo/lattice.hpp"

namespace isingholo {

enum class FreeEnergyMethod { direct, reconstructed };

std::string to_string(FreeEnergyMethod method);

/// Free energy of one torus at the critical point, in units of k_B T.
struct FreeEnergyPoint {
  LatticeSpec spec{1, 1};
  double f = 0.0;        // per site
  double F_total = 0.0;  // -ln Z = f * area
  FreeEnergyMethod method = FreeEnergyMethod::direct;

  static FreeEnergyPoint from_per_site(const LatticeSpec& spec, double f, FreeEnergyMethod method);
};

/// Ordinary least squares y = intercept + slope * x with the usual
/// homoscedastic standard errors (s^2 = SSR / (n - 2)).
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
  std::vector<double> residuals;
};

/// Throws UsageError for fewer than 3 points or a constant regressor.
LinearFit ordinary_least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct CentralChargeFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  double intercept_stderr = 0.0;
  double c = 0.0;
  double c_stderr = 0.0;
  std::vector<FreeEnergyPoint> points;
  std::vector<double> residuals;
};

/// Fits f = A + slope / N^2 over strips sharing the same length M and reads
/// off c = -6 slope / pi. The constant -pi c / (6 M^2) from the torus
/// correction is absorbed into A.
CentralChargeFit fit_central_charge_strip(const std::vector<FreeEnergyPoint>& points);

struct ElongationRow {
  LatticeSpec spec{1, 1};
  double x = 1.0;  // cols / rows
  double ln_x = 0.0;
  double F_total = 0.0;
  double f_per_site = 0.0;
  double ln_abs_F = 0.0;
};

/// Rows sorted by x. All points must share one area.
std::vector<ElongationRow> elongation_curve(const std::vector<FreeEnergyPoint>& points);

/// Fits F = A S - (pi c / 6)(x + 1/x) at fixed area: F against the regressor
/// -(pi/6)(x + 1/x), so the slope is c. Ignores the o(x^2) corrections, which
/// makes it rougher than the strip fit. Needs >= 3 distinct values of x + 1/x.
CentralChargeFit fit_central_charge_aspect(const std::vector<FreeEnergyPoint>& points);

}  // namespace isingholo

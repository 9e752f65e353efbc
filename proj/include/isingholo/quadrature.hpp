#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <string>

namespace isingholo {

enum class QuadratureRule {
  /// Composite Simpson 3/8 on panels of three intervals; exact for cubics.
  simpson38,
  /// Composite trapezoid. On a full period of a trigonometric polynomial of
  /// degree < points - 1 it is exact, whereas the 3/8 rule's alternating
  /// weights already alias frequency (points - 1) / 3 onto the mean.
  trapezoid,
};

std::string to_string(QuadratureRule rule);
/// Accepts "simpson38" and "trapezoid"; throws UsageError otherwise.
QuadratureRule parse_quadrature_rule(const std::string& name);

/// Composite Simpson 3/8 over a closed uniform grid:
/// sum over panels of (3h/8)(f0 + 3 f1 + 3 f2 + f3). Needs 3k + 1 samples.
std::complex<double> simpson38(std::span<const std::complex<double>> values, double spacing);
double simpson38(std::span<const double> values, double spacing);

/// Composite trapezoid over a closed uniform grid (>= 2 samples).
std::complex<double> trapezoid(std::span<const std::complex<double>> values, double spacing);

std::complex<double> integrate(QuadratureRule rule, std::span<const std::complex<double>> values,
                               double spacing);

/// Sampling grid and rule for the holographic reconstruction.
struct QuadratureConfig {
  int points = 394;
  double period = 2.0 * std::numbers::pi;
  QuadratureRule rule = QuadratureRule::trapezoid;

  /// points >= 4, points = 1 mod 3, period > 0.
  void validate() const;
};

}  // namespace isingholo

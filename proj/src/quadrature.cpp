#include "isingholo/quadrature.hpp"

#include <cmath>

#include "isingholo/errors.hpp"

namespace isingholo {
namespace {

template <typename T>
T simpson38_impl(std::span<const T> f, double h) {
  if (f.size() < 4 || f.size() % 3 != 1) {
    throw UsageError("Simpson 3/8 needs 3k+1 samples (k >= 1), got " + std::to_string(f.size()));
  }
  T interior{};
  T joints{};
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (i % 3 == 0) {
      joints += f[i];
    } else {
      interior += f[i];
    }
  }
  return (3.0 * h / 8.0) * (f.front() + f.back() + 3.0 * interior + 2.0 * joints);
}

}  // namespace

std::string to_string(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::simpson38:
      return "simpson38";
    case QuadratureRule::trapezoid:
      return "trapezoid";
  }
  return "unknown";
}

QuadratureRule parse_quadrature_rule(const std::string& name) {
  if (name == "simpson38") return QuadratureRule::simpson38;
  if (name == "trapezoid") return QuadratureRule::trapezoid;
  throw UsageError("unknown quadrature rule '" + name + "' (expected simpson38 or trapezoid)");
}

std::complex<double> simpson38(std::span<const std::complex<double>> values, double spacing) {
  return simpson38_impl(values, spacing);
}

double simpson38(std::span<const double> values, double spacing) {
  return simpson38_impl(values, spacing);
}

std::complex<double> trapezoid(std::span<const std::complex<double>> values, double spacing) {
  if (values.size() < 2) throw UsageError("trapezoid rule needs at least 2 samples");
  std::complex<double> interior{};
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  return spacing * (0.5 * (values.front() + values.back()) + interior);
}

std::complex<double> integrate(QuadratureRule rule, std::span<const std::complex<double>> values,
                               double spacing) {
  switch (rule) {
    case QuadratureRule::simpson38:
      return simpson38(values, spacing);
    case QuadratureRule::trapezoid:
      return trapezoid(values, spacing);
  }
  throw UsageError("unknown quadrature rule");
}

void QuadratureConfig::validate() const {
  if (points < 4 || points % 3 != 1) {
    throw UsageError("quadrature points must be >= 4 and congruent to 1 mod 3, got " +
                     std::to_string(points));
  }
  if (!(period > 0.0) || !std::isfinite(period)) throw UsageError("quadrature period must be > 0");
}

}  // namespace isingholo

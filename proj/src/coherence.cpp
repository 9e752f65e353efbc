#include "isingholo/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isingholo/errors.hpp"
#include "isingholo/ising.hpp"
#include "isingholo/parallel.hpp"

namespace isingholo {
namespace {

void require_positive_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw DomainError("coherence needs a finite beta > 0, got " + std::to_string(beta));
  }
}

}  // namespace

std::complex<double> coherence_at(const LatticeSpec& spec, double beta, double field, double u,
                                  double coupling) {
  require_positive_beta(beta);
  ModelParams{coupling, beta, {field, 0.0}}.validate();
  const int width = std::min(spec.rows(), spec.cols());
  const int length = std::max(spec.rows(), spec.cols());
  const TransferEngine engine(width, coupling, beta);
  const ScaledTrace denominator = engine.trace(length, {field, 0.0});
  const ScaledTrace numerator = engine.trace(length, {field, u / beta});
  return ratio(numerator, denominator);
}

double measured_period(const LatticeSpec& spec, double beta, double field, double coupling,
                       double tolerance) {
  require_positive_beta(beta);
  ModelParams{coupling, beta, {field, 0.0}}.validate();
  const int width = std::min(spec.rows(), spec.cols());
  const int length = std::max(spec.rows(), spec.cols());
  const TransferEngine engine(width, coupling, beta);
  const ScaledTrace z = engine.trace(length, {field, 0.0});
  for (const int folds : {4, 2}) {
    const double period = 2.0 * std::numbers::pi / folds;
    if (std::abs(ratio(engine.trace(length, {field, period / beta}), z) - 1.0) <= tolerance) {
      return period;
    }
  }
  return 2.0 * std::numbers::pi;
}

void validate_series_grid(int points, double period) {
  if (points < 4 || points % 3 != 1) {
    throw UsageError("points must be >= 4 and congruent to 1 mod 3 (Simpson 3/8 grid), got " +
                     std::to_string(points));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw UsageError("period must be positive");
  }
  const double folds = 2.0 * std::numbers::pi / period;
  if (std::abs(folds - std::round(folds)) > 1e-9 * folds) {
    throw UsageError("period must divide 2*pi, got " + std::to_string(period));
  }
}

CoherenceSeries coherence_series(const LatticeSpec& spec, double beta, double field, int points,
                                 double period, double coupling) {
  require_positive_beta(beta);
  validate_series_grid(points, period);
  ModelParams{coupling, beta, {field, 0.0}}.validate();
  const int width = std::min(spec.rows(), spec.cols());
  const int length = std::max(spec.rows(), spec.cols());
  if (width > kTransferMaxWidth) {
    throw CapacityError("both lattice dimensions exceed 14");
  }

  CoherenceSeries series;
  series.spec = spec;
  series.coupling = coupling;
  series.beta = beta;
  series.field = field;
  series.period = period;
  series.values.assign(points, {0.0, 0.0});

  series.signal_period = measured_period(spec, beta, field, coupling);

  const TransferEngine engine(width, coupling, beta);
  const ScaledTrace normalization = engine.trace(length, {field, 0.0});
  parallel_for(static_cast<std::size_t>(points), [&](std::size_t k) {
    const double u = series.u(static_cast<int>(k));
    series.values[k] = ratio(engine.trace(length, {field, u / beta}), normalization);
  });
  return series;
}

bool SeriesDiagnostics::ok(double tolerance) const noexcept {
  return grid_valid && normalization_defect <= tolerance && magnitude_excess <= tolerance &&
         conjugate_defect <= tolerance && periodicity_defect <= tolerance;
}

SeriesDiagnostics verify_series(const CoherenceSeries& series) {
  SeriesDiagnostics d;
  const int p = series.points();
  d.grid_valid = p >= 4 && p % 3 == 1;
  if (p == 0) return d;
  d.normalization_defect = std::abs(series.values.front() - 1.0);
  for (int k = 0; k < p; ++k) {
    d.magnitude_excess = std::max(d.magnitude_excess, std::abs(series.values[k]) - 1.0);
    d.conjugate_defect = std::max(
        d.conjugate_defect, std::abs(series.values[p - 1 - k] - std::conj(series.values[k])));
  }
  d.periodicity_defect = std::abs(series.values.back() - series.values.front());
  return d;
}

}  // namespace isingholo

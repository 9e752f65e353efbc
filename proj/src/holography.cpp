#include "isingholo/holography.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "isingholo/errors.hpp"
#include "isingholo/ising.hpp"

namespace isingholo {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ReconstructionResult finish(std::complex<double> integral, std::complex<double> target,
                            double source, const QuadratureConfig& quad) {
  ReconstructionResult out;
  out.integral = integral;
  out.target_field = target;
  out.source_field = source;
  out.quadrature = quad;
  const double mag = std::abs(integral);
  out.residual_imag = mag > 0.0 ? std::abs(integral.imag()) / mag : 0.0;
  out.ratio = LogComplex::from_value({integral.real(), 0.0});
  return out;
}

}  // namespace

std::complex<double> periodic_kernel(std::complex<double> w, double target) {
  // cosh w - cosh a = 2 sinh((w + a)/2) sinh((w - a)/2), without the cancellation
  // near w = a.
  return std::sinh(w) / (2.0 * std::sinh(0.5 * (w + target)) * std::sinh(0.5 * (w - target)));
}

std::complex<double> critical_kernel(std::complex<double> w) {
  return 1.0 / std::tanh(0.5 * w);
}

std::complex<double> line_kernel(std::complex<double> w, double target) {
  return 1.0 / (w - target);
}

std::complex<double> symmetric_line_kernel(std::complex<double> w, double target) {
  return 2.0 * w / (w * w - target * target);
}

namespace {

ReconstructionResult reconstruct_periodic_impl(
    const CoherenceSeries& series, double target, QuadratureRule rule,
    const std::function<std::complex<double>(std::complex<double>)>& kernel) {
  if (!(series.field > 0.0)) {
    throw ContourError("periodic reconstruction needs a positive source field, got " +
                       std::to_string(series.field));
  }
  if (!(std::abs(target) < series.field)) {
    throw ContourError("target field " + std::to_string(target) +
                       " is not strictly inside the contour |lambda'| < " +
                       std::to_string(series.field));
  }
  QuadratureConfig quad{series.points(), series.period, rule};
  quad.validate();
  validate_series_grid(series.points(), series.period);
  if (verify_series(series).periodicity_defect > 1e-8) {
    throw UsageError("coherence series is not periodic over period " +
                     std::to_string(series.period) + "; use a period of 2*pi");
  }

  const double fold_period = series.signal_period > 0.0 ? series.signal_period : series.period;
  const double repeats = series.period / fold_period;
  if (std::abs(repeats - std::round(repeats)) > 1e-12 || std::round(repeats) < 1.0) {
    throw UsageError("series span " + std::to_string(series.period) +
                     " is not a multiple of its signal period " + std::to_string(fold_period));
  }
  validate_series_grid(4, fold_period);

  const int folds = static_cast<int>(std::lround(kTwoPi / fold_period));
  const double source = series.beta * series.field;
  std::vector<std::complex<double>> integrand(series.values.size());
  for (int k = 0; k < series.points(); ++k) {
    std::complex<double> folded{0.0, 0.0};
    for (int j = 0; j < folds; ++j) {
      folded += kernel({source, series.u(k) + j * fold_period});
    }
    integrand[k] = series.values[k] * folded;
  }
  const std::complex<double> integral =
      integrate(rule, integrand, series.spacing()) / (kTwoPi * std::round(repeats));
  ReconstructionResult out = finish(integral, {target, 0.0}, series.field, quad);
  out.kernel_period = fold_period;
  return out;
}

}  // namespace

ReconstructionResult reconstruct_ratio_periodic(const CoherenceSeries& series, double target,
                                                QuadratureRule rule) {
  const double a = series.beta * target;
  return reconstruct_periodic_impl(series, target, rule,
                                   [a](std::complex<double> w) { return periodic_kernel(w, a); });
}

ReconstructionResult reconstruct_critical_ratio(const CoherenceSeries& series,
                                                QuadratureRule rule) {
  return reconstruct_periodic_impl(series, 0.0, rule, critical_kernel);
}

LineSource simulated_line_source(const LatticeSpec& spec, double beta, double field,
                                 double coupling) {
  if (!(beta > 0.0)) throw DomainError("line source needs beta > 0");
  const int width = std::min(spec.rows(), spec.cols());
  const int length = std::max(spec.rows(), spec.cols());
  auto engine = std::make_shared<const TransferEngine>(width, coupling, beta);
  const ScaledTrace z = engine->trace(length, {field, 0.0});
  LineSource source;
  source.field = field;
  source.log_partition = z.to_log().log_mag();
  source.coherence = [engine, length, field, beta, z](double u) {
    return ratio(engine->trace(length, {field, u / beta}), z);
  };
  return source;
}

ReconstructionResult reconstruct_ratio_infinite_line(const LineSource& lower,
                                                     const LineSource& upper, double target,
                                                     double beta, double u_max, int points,
                                                     QuadratureRule rule) {
  if (!(lower.field < target && target < upper.field)) {
    throw ContourError("target field " + std::to_string(target) + " must lie strictly between " +
                       std::to_string(lower.field) + " and " + std::to_string(upper.field));
  }
  if (!(u_max > 0.0) || !std::isfinite(u_max)) throw UsageError("u_max must be positive");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  QuadratureConfig quad{points, 2.0 * u_max, rule};
  quad.validate();

  const double a = beta * target;
  const double spacing = 2.0 * u_max / (points - 1);
  auto line_integral = [&](const LineSource& line) {
    std::vector<std::complex<double>> integrand(points);
    for (int k = 0; k < points; ++k) {
      const double u = -u_max + k * spacing;
      integrand[k] = line.coherence(u) * line_kernel({beta * line.field, u}, a);
    }
    return integrate(rule, integrand, spacing) / kTwoPi;
  };
  const std::complex<double> upper_part = line_integral(upper);
  const std::complex<double> lower_part = line_integral(lower);
  const double lower_weight = std::exp(lower.log_partition - upper.log_partition);
  return finish(upper_part - lower_weight * lower_part, {target, 0.0}, upper.field, quad);
}

FreeEnergyEstimate free_energy_from_series(const CoherenceSeries& series, QuadratureRule rule,
                                           double target) {
  FreeEnergyEstimate out;
  out.reconstruction = target == 0.0 ? reconstruct_critical_ratio(series, rule)
                                     : reconstruct_ratio_periodic(series, target, rule);
  if (!(out.reconstruction.integral.real() > 0.0)) {
    throw QuadratureBreakdown(
        "reconstructed partition-function ratio has non-positive real part " +
        std::to_string(out.reconstruction.integral.real()) + " on " +
        std::to_string(series.spec.rows()) + "x" + std::to_string(series.spec.cols()) +
        " with " + std::to_string(series.points()) + " points (" + to_string(rule) +
        "); the grid does not resolve the coherence signal");
  }
  const ModelParams bath{series.coupling, series.beta, {series.field, 0.0}};
  out.log_z_source = log_partition_transfer(series.spec, bath).log_mag();
  out.f_per_site = -(out.reconstruction.ratio.log_mag() + out.log_z_source) /
                   static_cast<double>(series.spec.area());
  return out;
}

FreeEnergyEstimate free_energy_at_zero_field(const LatticeSpec& spec, double beta, double field,
                                             const QuadratureConfig& quad, double coupling) {
  quad.validate();
  const CoherenceSeries series =
      coherence_series(spec, beta, field, quad.points, quad.period, coupling);
  return free_energy_from_series(series, quad.rule);
}

}  // namespace isingholo

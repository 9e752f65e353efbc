#pragma once

#include <complex>
#include <functional>

#include "isingholo/coherence.hpp"
#include "isingholo/lattice.hpp"
#include "isingholo/log_complex.hpp"
#include "isingholo/quadrature.hpp"

namespace isingholo {

/// Cauchy kernel folded onto one 2*pi period in u:
///   sinh(w) / (cosh(w) - cosh(a)),   w = beta*lambda + i*u,  a = beta*lambda'.
std::complex<double> periodic_kernel(std::complex<double> w, double target);

/// The a = 0 case, coth(w / 2).
std::complex<double> critical_kernel(std::complex<double> w);

/// Infinite-line kernel 1 / (w - a).
std::complex<double> line_kernel(std::complex<double> w, double target);

/// Both vertical lines of a symmetric contour combined into one,
/// 2w / (w^2 - a^2) = 1/(w - a) + 1/(w + a).
std::complex<double> symmetric_line_kernel(std::complex<double> w, double target);

struct ReconstructionResult {
  /// Z(beta, target) / Z(beta, source), real part of the quadrature.
  LogComplex ratio;
  /// The raw quadrature value before the real part is taken.
  std::complex<double> integral;
  std::complex<double> target_field;
  double source_field = 0.0;
  /// |Im integral| / |integral|; zero for an exact reconstruction.
  double residual_imag = 0.0;
  QuadratureConfig quadrature;
  /// Period the kernel was folded onto (periodic reconstruction only).
  double kernel_period = 0.0;
};

/// Z(beta, target) / Z(beta, h) from one period of coherence data at real h:
///
///   (T/U) integral_0^U du/2pi L(u) K_T(u),
///
/// with U the sampled span, T the signal period of the series (U when unknown)
/// and K_T the periodic kernel summed over the 2*pi/T shifts of T (T = 2*pi
/// leaves it unchanged). The integrand is T-periodic, so a span of 2*pi on
/// P - 1 odd intervals samples one period T = pi on P - 1 distinct nodes.
/// Throws ContourError unless |target| < h and UsageError when the series is
/// not periodic over its span or U is not a multiple of T.
ReconstructionResult reconstruct_ratio_periodic(const CoherenceSeries& series, double target,
                                                QuadratureRule rule = QuadratureRule::trapezoid);

/// Z(beta, 0) / Z(beta, h) using the coth kernel.
ReconstructionResult reconstruct_critical_ratio(const CoherenceSeries& series,
                                                QuadratureRule rule = QuadratureRule::trapezoid);

/// Coherence measured on one vertical line Re(lambda) = field, plus the log of
/// the bath's partition function there.
struct LineSource {
  double field = 0.0;
  double log_partition = 0.0;
  std::function<std::complex<double>(double u)> coherence;
};

/// Coherence and normalization for a simulated lattice at real `field`.
LineSource simulated_line_source(const LatticeSpec& spec, double beta, double field,
                                 double coupling = 1.0);

/// Two-line Cauchy reconstruction on the rectangle lower.field < Re < upper.field,
/// truncated to |u| <= u_max. Returns Z(beta, target) / Z(beta, upper.field).
/// Each line is integrated on `points` nodes (3k + 1) with the given rule. The
/// truncation error decays like 1 / u_max. Throws ContourError unless
/// lower.field < target < upper.field.
ReconstructionResult reconstruct_ratio_infinite_line(const LineSource& lower,
                                                     const LineSource& upper, double target,
                                                     double beta, double u_max, int points,
                                                     QuadratureRule rule = QuadratureRule::trapezoid);

struct FreeEnergyEstimate {
  double f_per_site = 0.0;      // -ln Z(beta, 0) / area
  double log_z_source = 0.0;    // ln Z(beta, h), exact transfer-matrix value
  ReconstructionResult reconstruction;
};

/// Free energy per site (units of k_B T) at real field `target` from an existing
/// series: f = -(ln ratio + ln Z(beta, h)) / area. target = 0 uses the coth
/// kernel. Throws QuadratureBreakdown when the reconstructed ratio is not
/// positive.
FreeEnergyEstimate free_energy_from_series(const CoherenceSeries& series,
                                           QuadratureRule rule = QuadratureRule::trapezoid,
                                           double target = 0.0);

/// Simulates the coherence on the configured grid, then reconstructs.
FreeEnergyEstimate free_energy_at_zero_field(const LatticeSpec& spec, double beta, double field,
                                             const QuadratureConfig& quad, double coupling = 1.0);

}  // namespace isingholo

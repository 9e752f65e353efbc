#pragma once

#include <string>
#include <vector>

#include "isingholo/coherence.hpp"
#include "isingholo/holography.hpp"
#include "isingholo/scaling.hpp"

namespace isingholo {

/// printf("%.17g"): round-trips every binary64 value.
std::string format_double(double value);

/// Coherence CSV:
///   # coherence N=<N> M=<M> beta=<beta> h=<h> eta=1 period=<U> points=<P>
///   # signal_period=<T>      (only when known)
///   u,re,im
///   <u_k>,<Re L>,<Im L>      (one row per grid point)
std::string coherence_csv(const CoherenceSeries& series);

/// Inverse of coherence_csv. Throws UsageError on malformed input or a row
/// count that disagrees with the header. Assumes J = 1.
CoherenceSeries parse_coherence_csv(const std::string& text);

/// Reconstruction report with fields N, M, beta, h, lambda_prime, points,
/// period, kernel_period, rule, ratio_log_mag, ratio_phase, residual_imag, f_per_site.
std::string reconstruction_json(const CoherenceSeries& series, const FreeEnergyEstimate& estimate);

/// {slope, slope_stderr, intercept, c, c_stderr, points: [{N, M, f, residual}]}
std::string fit_json(const CentralChargeFit& fit);

/// N,M,f,residual,method
std::string fit_points_csv(const CentralChargeFit& fit);

/// x,ln_x,F_total,f_per_site,ln_abs_F_total,N,M
std::string elongation_csv(const std::vector<ElongationRow>& rows);

/// Writes to "<path>.tmp" and renames over `path`, so a failed run never
/// leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace isingholo

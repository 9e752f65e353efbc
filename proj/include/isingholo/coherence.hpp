#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "isingholo/lattice.hpp"

namespace isingholo {

/// Probe coherence <S_+(t)> sampled on the closed uniform grid
/// u_k = k * period / (points - 1), k = 0 .. points-1, with u = eta * t.
struct CoherenceSeries {
  LatticeSpec spec{1, 1};
  double coupling = 1.0;
  double beta = critical_beta();
  double field = 0.1;  // real bath field h
  double eta = 1.0;
  double period = 2.0 * std::numbers::pi;
  /// Smallest period of L measured on the bath (pi on even areas), or 0 when
  /// unknown. The reconstruction folds its kernel onto this period.
  double signal_period = 0.0;
  std::vector<std::complex<double>> values;

  int points() const noexcept { return static_cast<int>(values.size()); }
  double spacing() const noexcept { return period / (points() - 1); }
  double u(int k) const noexcept { return k * period / (points() - 1); }
};

/// Z(beta, h + i u / beta) / Z(beta, h) from two transfer-matrix evaluations.
/// Exactly 1 at u = 0 and exactly 0 where the shifted partition function
/// vanishes. Requires beta > 0.
std::complex<double> coherence_at(const LatticeSpec& spec, double beta, double field, double u,
                                  double coupling = 1.0);

/// Samples the coherence over one period. `points` must be >= 4 and
/// congruent to 1 mod 3; `period` must divide 2*pi (2*pi, pi, pi/2, ...).
/// Grid points are evaluated in parallel and stored in grid order. Also
/// records measured_period() as the signal period.
CoherenceSeries coherence_series(const LatticeSpec& spec, double beta, double field, int points,
                                 double period = 2.0 * std::numbers::pi, double coupling = 1.0);

/// Smallest period of the coherence among 2*pi/4, 2*pi/2 and 2*pi, found by
/// evaluating L at the candidate periods (|L(U) - 1| <= tolerance). For the
/// Ising bath this is pi on even areas and 2*pi on odd ones.
double measured_period(const LatticeSpec& spec, double beta, double field, double coupling = 1.0,
                       double tolerance = 1e-9);

/// Checks grid arguments for coherence_series without computing anything.
void validate_series_grid(int points, double period);

struct SeriesDiagnostics {
  double normalization_defect = 0.0;  // |L(0) - 1|
  double magnitude_excess = 0.0;      // max(0, max_k |L(u_k)| - 1)
  double conjugate_defect = 0.0;      // max_k |L(U - u_k) - conj L(u_k)|
  double periodicity_defect = 0.0;    // |L(U) - L(0)|
  bool grid_valid = true;             // points >= 4 and points = 1 mod 3

  /// True when every defect is within `tolerance` and the grid is valid.
  bool ok(double tolerance = 1e-10) const noexcept;
};

SeriesDiagnostics verify_series(const CoherenceSeries& series);

}  // namespace isingholo

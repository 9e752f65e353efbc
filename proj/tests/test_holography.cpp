#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "isingholo/errors.hpp"
#include "isingholo/holography.hpp"
#include "isingholo/ising.hpp"
#include "oracles.hpp"

using namespace isingholo;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

// Z(beta, target) / Z(beta, source) by direct enumeration.
double brute_ratio(const LatticeSpec& spec, double beta, double target, double source) {
  const auto num = oracle::partition_sum(spec, {1.0, beta, {target, 0.0}});
  const auto den = oracle::partition_sum(spec, {1.0, beta, {source, 0.0}});
  return static_cast<double>((num / den).real());
}

double relative_error(const ReconstructionResult& r, double exact) {
  return std::abs(r.ratio.value().real() / exact - 1.0);
}

}  // namespace

TEST_CASE("kernel identity: sinh w / (cosh w - 1) = coth(w / 2)") {
  double worst = 0.0;
  for (double re = 0.04; re <= 3.0; re += 0.0173) {
    for (double im = -2.0 * pi; im <= 2.0 * pi; im += 0.0191) {
      const cd w{re, im};
      const cd a = periodic_kernel(w, 0.0);
      const cd b = critical_kernel(w);
      worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("symmetric line kernel is the sum of both Cauchy lines") {
  for (double a : {0.0, 0.1, 0.7}) {
    for (double im : {-30.0, -1.0, 0.2, 5.0}) {
      const cd w{0.3, im};
      const cd twoline = line_kernel(w, a) - line_kernel(-w, a);
      CHECK(std::abs(symmetric_line_kernel(w, a) - twoline) <= 1e-12 * std::abs(twoline));
    }
  }
}

TEST_CASE("2x2 reconstruction of Z(0.1) / Z(0.3)") {
  const double beta = 0.4;
  const CoherenceSeries s = coherence_series({2, 2}, beta, 0.3, 394);
  const double exact = brute_ratio({2, 2}, beta, 0.1, 0.3);
  const ReconstructionResult r = reconstruct_ratio_periodic(s, 0.1);
  CHECK(relative_error(r, exact) <= 1e-8);
  CHECK(r.residual_imag <= 1e-8);
  CHECK(r.source_field == 0.3);
  CHECK(r.target_field == cd{0.1, 0.0});
  CHECK(r.quadrature.points == 394);
  // Simpson 3/8 on the same data is limited by its aliasing at frequency 131.
  const ReconstructionResult simpson = reconstruct_ratio_periodic(s, 0.1, QuadratureRule::simpson38);
  CHECK(relative_error(simpson, exact) < 1e-5);
  CHECK(relative_error(simpson, exact) > relative_error(r, exact));
}

TEST_CASE("1x1 critical ratio is 1 / cosh(beta h)") {
  const CoherenceSeries s = coherence_series({1, 1}, 0.4, 0.3, 394);
  const ReconstructionResult r = reconstruct_critical_ratio(s);
  CHECK(std::abs(r.ratio.value().real() - 1.0 / std::cosh(0.12)) <= 1e-8);
  CHECK(r.target_field == cd{0.0, 0.0});
}

TEST_CASE("large field: the kernel tends to one") {
  const CoherenceSeries s = coherence_series({2, 2}, 0.4, 2.0, 394);
  CHECK(relative_error(reconstruct_critical_ratio(s), brute_ratio({2, 2}, 0.4, 0.0, 2.0)) <= 1e-10);
}

TEST_CASE("critical ratio equals the periodic kernel at target zero") {
  const CoherenceSeries s = coherence_series({3, 4}, 0.44, 0.2, 97);
  const cd a = reconstruct_critical_ratio(s).integral;
  const cd b = reconstruct_ratio_periodic(s, 0.0).integral;
  CHECK(std::abs(a - b) <= 1e-13 * std::abs(a));
}

TEST_CASE("convergence in the number of grid points") {
  for (const LatticeSpec spec : {LatticeSpec(4, 4), LatticeSpec(3, 5), LatticeSpec(2, 8)}) {
    const double exact = brute_ratio(spec, 0.44, 0.0, 0.1);
    double previous = INFINITY;
    for (int points : {97, 394, 1201}) {
      CoherenceSeries s = coherence_series(spec, 0.44, 0.1, points);
      s.signal_period = 0.0;  // plain 2 pi kernel
      const double err = relative_error(reconstruct_critical_ratio(s), exact);
      CAPTURE(points);
      CHECK(err < previous);
      previous = err;
    }
    CHECK(previous < 1e-12);
  }
}

TEST_CASE("folding onto the signal period") {
  const LatticeSpec spec(4, 4);
  const double exact = brute_ratio(spec, 0.44, 0.0, 0.1);
  CoherenceSeries s = coherence_series(spec, 0.44, 0.1, 394);
  CHECK(s.signal_period == doctest::Approx(pi));
  const ReconstructionResult folded = reconstruct_critical_ratio(s);
  CHECK(folded.kernel_period == s.signal_period);
  s.signal_period = 0.0;
  const ReconstructionResult plain = reconstruct_critical_ratio(s);
  CHECK(plain.kernel_period == 2.0 * pi);
  CHECK(relative_error(folded, exact) < 1e-13);
  CHECK(relative_error(plain, exact) > 1e-9);

  // Same nodes modulo pi: 2 pi on 393 intervals and pi on 393 intervals.
  const double half = reconstruct_critical_ratio(coherence_series(spec, 0.44, 0.1, 394, pi)).ratio.value().real();
  CHECK(std::abs(folded.ratio.value().real() / half - 1.0) < 1e-13);

  CoherenceSeries mismatched = coherence_series(spec, 0.44, 0.1, 97, pi);
  mismatched.signal_period = 2.0 * pi;
  CHECK_THROWS_AS(reconstruct_critical_ratio(mismatched), UsageError);
}

TEST_CASE("identical data at 394 and 1201 points agree to the 394-point error") {
  const LatticeSpec spec(3, 5);
  const double coarse = reconstruct_critical_ratio(coherence_series(spec, 0.44, 0.3, 394)).ratio.value().real();
  const double fine = reconstruct_critical_ratio(coherence_series(spec, 0.44, 0.3, 1201)).ratio.value().real();
  CHECK(std::abs(coarse / fine - 1.0) < 1e-10);
}

TEST_CASE("halving the field at fixed grid increases the quadrature error") {
  const LatticeSpec spec(3, 5);
  for (const QuadratureRule rule : {QuadratureRule::trapezoid, QuadratureRule::simpson38}) {
    double previous = 0.0;
    for (double h : {0.4, 0.2, 0.1, 0.05}) {
      const double err = relative_error(reconstruct_critical_ratio(coherence_series(spec, 0.44, h, 97), rule),
                                        brute_ratio(spec, 0.44, 0.0, h));
      CAPTURE(h);
      CHECK(err > previous);
      previous = err;
    }
  }
}

TEST_CASE("realness on all small lattices") {
  for (int rows = 1; rows <= 4; ++rows) {
    for (int cols = 1; rows * cols <= 16; ++cols) {
      const CoherenceSeries s = coherence_series({rows, cols}, critical_beta(), 0.3, 394);
      for (double target : {0.0, 0.15, -0.1}) {
        const ReconstructionResult r = reconstruct_ratio_periodic(s, target);
        CHECK(r.residual_imag <= 1e-8);
        CHECK(relative_error(r, brute_ratio({rows, cols}, critical_beta(), target, 0.3)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("contour containment") {
  const CoherenceSeries s = coherence_series({2, 2}, 0.4, 0.1, 13);
  CHECK_THROWS_AS(reconstruct_ratio_periodic(s, 0.2), ContourError);
  CHECK_THROWS_AS(reconstruct_ratio_periodic(s, 0.1), ContourError);
  CHECK_THROWS_AS(reconstruct_ratio_periodic(s, -0.1), ContourError);
  CoherenceSeries zero = coherence_series({2, 2}, 0.4, 0.0, 13);
  CHECK_THROWS_AS(reconstruct_critical_ratio(zero), ContourError);
}

TEST_CASE("a series that is not periodic over its span is rejected") {
  const CoherenceSeries odd = coherence_series({3, 3}, 0.44, 0.1, 97, pi);
  CHECK_THROWS_AS(reconstruct_critical_ratio(odd), UsageError);
}

TEST_CASE("the pi-period series reconstructs even areas") {
  const LatticeSpec spec(4, 4);
  const double exact = brute_ratio(spec, 0.44, 0.0, 0.1);
  const ReconstructionResult half = reconstruct_critical_ratio(coherence_series(spec, 0.44, 0.1, 394, pi));
  CHECK(relative_error(half, exact) < 1e-12);
}

TEST_CASE("infinite-line variant") {
  const double beta = 0.4;
  const LineSource lower = simulated_line_source({2, 2}, beta, -0.3);
  const LineSource upper = simulated_line_source({2, 2}, beta, 0.3);
  const double periodic = reconstruct_critical_ratio(coherence_series({2, 2}, beta, 0.3, 394)).ratio.value().real();
  CHECK(std::abs(periodic / brute_ratio({2, 2}, beta, 0.0, 0.3) - 1.0) < 1e-12);
  double previous = INFINITY;
  for (double u_max : {10.0 * pi, 20.0 * pi, 40.0 * pi}) {
    const ReconstructionResult r = reconstruct_ratio_infinite_line(lower, upper, 0.0, beta, u_max, 12001);
    const double err = std::abs(r.ratio.value().real() / periodic - 1.0);
    CAPTURE(u_max);
    CHECK(err < previous);
    // Tail error roughly halves as u_max doubles.
    if (std::isfinite(previous)) CHECK(err == doctest::Approx(previous / 2.0).epsilon(0.1));
    previous = err;
  }
  CHECK_THROWS_AS(reconstruct_ratio_infinite_line(lower, upper, 0.3, beta, 10.0, 31), ContourError);
  CHECK_THROWS_AS(reconstruct_ratio_infinite_line(lower, upper, -0.5, beta, 10.0, 31), ContourError);
  CHECK_THROWS_AS(reconstruct_ratio_infinite_line(upper, lower, 0.0, beta, 10.0, 31), ContourError);
}

TEST_CASE("free energy per site matches the direct evaluation") {
  for (const LatticeSpec spec : {LatticeSpec(2, 2), LatticeSpec(3, 6), LatticeSpec(4, 4), LatticeSpec(6, 10)}) {
    const FreeEnergyEstimate e = free_energy_at_zero_field(spec, critical_beta(), 0.1, {394, pi});
    const double direct = -log_partition_transfer(spec, {1.0, critical_beta(), {}}).log_mag() / spec.area();
    CAPTURE(spec.rows());
    CHECK(std::abs(e.f_per_site - direct) < 1e-9);
    CHECK(e.log_z_source == doctest::Approx(log_partition_transfer(spec, {1.0, critical_beta(), {0.1, 0.0}}).log_mag()));
  }
}

TEST_CASE("a non-positive reconstructed ratio raises a quadrature breakdown") {
  // Simpson 3/8 aliasing at 394 points over 2 pi on a 6x50 strip.
  const CoherenceSeries s = coherence_series({6, 50}, critical_beta(), 0.1, 394);
  CHECK_THROWS_AS(free_energy_from_series(s, QuadratureRule::simpson38), QuadratureBreakdown);
}

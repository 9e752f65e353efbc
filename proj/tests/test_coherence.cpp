#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "isingholo/coherence.hpp"
#include "isingholo/errors.hpp"
#include "isingholo/ising.hpp"
#include "oracles.hpp"

using namespace isingholo;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

cd brute_coherence(const LatticeSpec& spec, double beta, double h, double u) {
  const auto num = oracle::partition_sum(spec, {1.0, beta, {h, u / beta}});
  const auto den = oracle::partition_sum(spec, {1.0, beta, {h, 0.0}});
  const auto r = num / den;
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

}  // namespace

TEST_CASE("coherence at u = 0 is exactly one") {
  for (const LatticeSpec spec : {LatticeSpec(1, 1), LatticeSpec(3, 3), LatticeSpec(6, 50)}) {
    const cd l = coherence_at(spec, critical_beta(), 0.1, 0.0);
    CHECK(l.real() == 1.0);
    CHECK(l.imag() == 0.0);
  }
}

TEST_CASE("1x1 lattice: cosh(beta h + i u) / cosh(beta h)") {
  const double beta = 0.4;
  const double h = 0.3;
  for (double u = -7.0; u <= 7.0; u += 0.37) {
    const cd expected = std::cosh(cd{beta * h, u}) / std::cosh(beta * h);
    CHECK(std::abs(coherence_at({1, 1}, beta, h, u) - expected) < 1e-14);
  }
}

TEST_CASE("coherence matches brute force on small lattices") {
  for (const LatticeSpec spec : {LatticeSpec(2, 2), LatticeSpec(3, 3), LatticeSpec(2, 7), LatticeSpec(4, 4)}) {
    for (double u : {0.3, 1.7, 2.9, 4.4, 6.1}) {
      CHECK(std::abs(coherence_at(spec, 0.44, 0.2, u) - brute_coherence(spec, 0.44, 0.2, u)) < 1e-12);
    }
  }
}

TEST_CASE("ratio of two independent log partitions equals the single-engine coherence") {
  const LatticeSpec spec(5, 9);
  const double beta = critical_beta();
  for (double u : {0.2, 1.1, 2.5}) {
    const LogComplex num = log_partition_transfer(spec, {1.0, beta, {0.1, u / beta}});
    const LogComplex den = log_partition_transfer(spec, {1.0, beta, {0.1, 0.0}});
    CHECK(std::abs((num / den).value() - coherence_at(spec, beta, 0.1, u)) < 1e-10);
  }
}

TEST_CASE("series grid validation") {
  CHECK_THROWS_AS(coherence_series({2, 2}, 0.4, 0.3, 5), UsageError);
  CHECK_THROWS_AS(coherence_series({2, 2}, 0.4, 0.3, 1), UsageError);
  CHECK_THROWS_AS(coherence_series({2, 2}, 0.4, 0.3, 7, 3.0), UsageError);
  CHECK_THROWS_AS(coherence_series({2, 2}, 0.4, 0.3, 7, -pi), UsageError);
  CHECK_NOTHROW(validate_series_grid(4, 2.0 * pi));
  CHECK_NOTHROW(validate_series_grid(394, pi));
  CHECK_NOTHROW(validate_series_grid(394, pi / 2.0));
}

TEST_CASE("series layout and values") {
  const CoherenceSeries s = coherence_series({3, 4}, 0.44, 0.1, 13);
  CHECK(s.points() == 13);
  CHECK(s.u(0) == 0.0);
  CHECK(s.u(12) == doctest::Approx(2.0 * pi).epsilon(1e-15));
  CHECK(s.values[0] == cd{1.0, 0.0});
  for (int k = 0; k < s.points(); ++k) {
    CHECK(s.values[k] == coherence_at({3, 4}, 0.44, 0.1, s.u(k)));
  }
}

TEST_CASE("2x2: the pi-period series is the first half of the 2 pi series") {
  const double beta = 0.4;
  const double h = 0.3;
  const CoherenceSeries half = coherence_series({2, 2}, beta, h, 394, pi);
  const CoherenceSeries full = coherence_series({2, 2}, beta, h, 787, 2.0 * pi);
  for (int k = 0; k < half.points(); ++k) {
    CHECK(std::abs(half.values[k] - full.values[k]) < 1e-14);
    // L(u + pi) = L(u) for even area.
    CHECK(std::abs(full.values[k + 393] - full.values[k]) < 1e-12);
    CHECK(std::abs(half.values[k] - brute_coherence({2, 2}, beta, h, half.u(k))) < 1e-12);
  }
}

TEST_CASE("verify_series") {
  SUBCASE("well-formed series") {
    for (const LatticeSpec spec : {LatticeSpec(2, 2), LatticeSpec(3, 3), LatticeSpec(4, 7)}) {
      const SeriesDiagnostics d = verify_series(coherence_series(spec, critical_beta(), 0.1, 97));
      CHECK(d.normalization_defect == 0.0);
      CHECK(d.magnitude_excess <= 1e-12);
      CHECK(d.conjugate_defect <= 1e-10);
      CHECK(d.periodicity_defect <= 1e-10);
      CHECK(d.ok());
    }
  }
  SUBCASE("odd area sampled over pi is flagged") {
    const SeriesDiagnostics d = verify_series(coherence_series({3, 3}, 0.44, 0.1, 97, pi));
    // L(pi) = -L(0) on odd areas.
    CHECK(d.periodicity_defect == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(d.ok());
    CHECK(std::abs(brute_coherence({3, 3}, 0.44, 0.1, pi) + 1.0) < 1e-12);
  }
  SUBCASE("tampered normalization") {
    CoherenceSeries s = coherence_series({2, 2}, 0.44, 0.1, 13);
    s.values[0] = 0.5;
    const SeriesDiagnostics d = verify_series(s);
    CHECK(d.normalization_defect == doctest::Approx(0.5));
    CHECK_FALSE(d.ok());
  }
  SUBCASE("invalid grid count is reported") {
    CoherenceSeries s = coherence_series({2, 2}, 0.44, 0.1, 13);
    s.values.pop_back();
    CHECK_FALSE(verify_series(s).grid_valid);
  }
}

TEST_CASE("measured period") {
  CHECK(measured_period({2, 2}, 0.44, 0.1) == doctest::Approx(pi));
  CHECK(measured_period({6, 50}, critical_beta(), 0.1) == doctest::Approx(pi));
  CHECK(measured_period({3, 3}, 0.44, 0.1) == doctest::Approx(2.0 * pi));
  CHECK(measured_period({1, 1}, 0.44, 0.1) == doctest::Approx(2.0 * pi));
}

TEST_CASE("6x50 coherence decays and oscillates") {
  const CoherenceSeries s = coherence_series({6, 50}, critical_beta(), 0.1, 97, pi);
  double smallest = 1.0;
  for (const cd& v : s.values) smallest = std::min(smallest, std::abs(v));
  CHECK(smallest < 1e-3);
  CHECK(verify_series(s).ok());
}

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace isingholo {

/// Onsager's self-dual point of the square lattice, beta_c = ln(1 + sqrt 2) / 2
/// in units J = 1.
inline double critical_beta() { return 0.5 * std::log(1.0 + std::numbers::sqrt2); }

/// Rectangular torus of `rows` x `cols` spins, periodic in both directions.
class LatticeSpec {
 public:
  /// Throws UsageError unless both dimensions are at least 1.
  LatticeSpec(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  long area() const noexcept { return static_cast<long>(rows_) * cols_; }
  /// x = cols / rows.
  double aspect_ratio() const noexcept { return static_cast<double>(cols_) / rows_; }
  LatticeSpec transposed() const noexcept { return {cols_, rows_, Unchecked{}}; }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

 private:
  struct Unchecked {};
  LatticeSpec(int rows, int cols, Unchecked) noexcept : rows_(rows), cols_(cols) {}

  int rows_;
  int cols_;
};

/// Coupling J, inverse temperature beta and a (possibly complex) uniform field h.
///
/// The imaginary part of the field carries the probe's time axis: the bath
/// seen by a probe at time t has field h + i*u/beta with u = eta*t.
struct ModelParams {
  double coupling = 1.0;
  double beta = critical_beta();
  std::complex<double> field{0.0, 0.0};

  /// Throws DomainError for beta < 0 or non-finite entries. beta = 0 (infinite
  /// temperature) is accepted.
  void validate() const;

  /// The same bath with its field shifted along the imaginary axis by u/beta.
  ModelParams shifted(double u) const;
};

}  // namespace isingholo

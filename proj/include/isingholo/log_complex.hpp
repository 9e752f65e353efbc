#pragma once

#include <complex>
#include <limits>

namespace isingholo {

using complex = std::complex<double>;

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase) noexcept;

/// A nonzero complex number stored as (ln|z|, arg z), so partition functions
/// of a few thousand spins stay representable. Zero is the tagged state
/// log_mag = -inf; it is what a vanishing partition function (a Lee-Yang
/// zero hit exactly) evaluates to.
class LogComplex {
 public:
  LogComplex() = default;
  LogComplex(double log_mag, double phase) noexcept;

  static LogComplex from_value(complex z) noexcept;
  static LogComplex zero() noexcept { return {}; }
  static LogComplex one() noexcept { return {0.0, 0.0}; }

  double log_mag() const noexcept { return log_mag_; }
  double phase() const noexcept { return phase_; }
  bool is_zero() const noexcept { return log_mag_ == -std::numeric_limits<double>::infinity(); }

  /// exp(log_mag) * e^{i phase}; overflows to inf when log_mag > ~709.
  complex value() const noexcept;

  LogComplex conj() const noexcept;

  LogComplex& operator*=(const LogComplex& rhs) noexcept;
  /// Division by zero yields a non-finite log_mag.
  LogComplex& operator/=(const LogComplex& rhs) noexcept;

  friend LogComplex operator*(LogComplex a, const LogComplex& b) noexcept { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) noexcept { return a /= b; }

 private:
  double log_mag_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

/// Sum of log-represented terms, scaled by the largest magnitude so no term
/// overflows. Summation runs in the given order.
template <typename Range>
LogComplex log_sum(const Range& terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (const LogComplex& t : terms) {
    if (t.log_mag() > top) top = t.log_mag();
  }
  if (top == -std::numeric_limits<double>::infinity()) return LogComplex::zero();
  complex acc{0.0, 0.0};
  for (const LogComplex& t : terms) {
    if (t.is_zero()) continue;
    acc += std::polar(std::exp(t.log_mag() - top), t.phase());
  }
  LogComplex out = LogComplex::from_value(acc);
  if (out.is_zero()) return out;
  return {out.log_mag() + top, out.phase()};
}

}  // namespace isingholo

#include "isingholo/log_complex.hpp"

#include <cmath>
#include <numbers>

namespace isingholo {

double wrap_phase(double phase) noexcept {
  double r = std::remainder(phase, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

LogComplex::LogComplex(double log_mag, double phase) noexcept
    : log_mag_(log_mag), phase_(wrap_phase(phase)) {
  if (is_zero()) phase_ = 0.0;
}

LogComplex LogComplex::from_value(complex z) noexcept {
  const double mag = std::abs(z);
  if (mag == 0.0) return zero();
  return {std::log(mag), std::arg(z)};
}

complex LogComplex::value() const noexcept {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_), phase_);
}

LogComplex LogComplex::conj() const noexcept {
  return {log_mag_, -phase_};
}

LogComplex& LogComplex::operator*=(const LogComplex& rhs) noexcept {
  if (is_zero() || rhs.is_zero()) {
    *this = zero();
    return *this;
  }
  *this = LogComplex(log_mag_ + rhs.log_mag_, phase_ + rhs.phase_);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& rhs) noexcept {
  if (is_zero()) return *this;
  *this = LogComplex(log_mag_ - rhs.log_mag_, phase_ - rhs.phase_);
  return *this;
}

}  // namespace isingholo

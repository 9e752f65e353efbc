#pragma once

#include <stdexcept>
#include <string>

namespace isingholo {

/// Base class for all errors raised by the library. `exit_code()` is the
/// process status the command-line tool maps the error to.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// Invalid arguments: bad grid sizes, too few fit points, mixed areas.
class UsageError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Parameters outside the model's domain (negative beta, non-finite values).
class DomainError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// The requested target field is not enclosed by the integration contour.
class ContourError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Problem too large for the enumeration or transfer-matrix budget.
class CapacityError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// The quadrature produced a ratio that cannot be a ratio of positive
/// partition functions (non-positive real part). Usually means the grid
/// is too coarse for the lattice's magnetization bandwidth.
class QuadratureBreakdown : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

}  // namespace isingholo

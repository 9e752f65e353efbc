#include "isingholo/lattice.hpp"

#include <string>

#include "isingholo/errors.hpp"

namespace isingholo {

LatticeSpec::LatticeSpec(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw UsageError("lattice dimensions must be >= 1, got " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

void ModelParams::validate() const {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw DomainError("beta must be finite and non-negative, got " + std::to_string(beta));
  }
  if (!std::isfinite(coupling)) throw DomainError("coupling must be finite");
  if (!std::isfinite(field.real()) || !std::isfinite(field.imag())) {
    throw DomainError("field must be finite");
  }
}

ModelParams ModelParams::shifted(double u) const {
  ModelParams out = *this;
  out.field += std::complex<double>(0.0, u / beta);
  return out;
}

}  // namespace isingholo

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "isingholo/lattice.hpp"
#include "isingholo/log_complex.hpp"

namespace isingholo {

/// Largest torus area the enumeration oracle accepts.
inline constexpr long kBruteForceMaxArea = 20;
/// Largest transfer-matrix width (2^14 states).
inline constexpr int kTransferMaxWidth = 14;
/// Default memory budget for a dense transfer matrix.
inline constexpr std::size_t kDefaultMatrixBudgetBytes = std::size_t{1} << 30;

/// ln Z by summing exp(-beta H) over all 2^(rows*cols) spin configurations.
///
/// H is taken literally: every site contributes the bond to its right and the
/// bond below it, with wraparound, so a dimension of 2 double-counts bonds in
/// that direction and a dimension of 1 produces self-bonds.
/// Throws CapacityError for area > 20 and DomainError for bad parameters.
LogComplex brute_force_log_partition(const LatticeSpec& spec, const ModelParams& params);

/// Symmetrized column-to-column transfer matrix for a column of `rows` spins:
///
///   T(s, s') = exp(bJ sum_i s_i s'_i) exp(bJ/2 (E(s) + E(s'))) exp(bh/2 (m(s) + m(s')))
///
/// with E(s) = sum_i s_i s_{i+1} (periodic) and m(s) = sum_i s_i. Bit i of the
/// state index set means spin i is +1. T is complex-symmetric for any field.
Eigen::MatrixXcd build_transfer_matrix(int rows, const ModelParams& params,
                                       std::size_t memory_budget = kDefaultMatrixBudgetBytes);

/// A complex value stored as mantissa * 2^exponent2 * exp(log_offset).
///
/// Rescaling by powers of two is exact, so two traces that share log_offset
/// (same real field, same lattice) divide without the absolute rounding of
/// ln|Z| ~ area entering the ratio.
struct ScaledTrace {
  std::complex<double> mantissa{0.0, 0.0};
  long exponent2 = 0;
  double log_offset = 0.0;

  bool is_zero() const noexcept { return mantissa == std::complex<double>{0.0, 0.0}; }
  LogComplex to_log() const noexcept;
};

/// this / other as a plain complex number.
std::complex<double> ratio(const ScaledTrace& numerator, const ScaledTrace& denominator);

/// Tr(matrix^power) by binary powering with exact power-of-two rescaling after
/// every product.
ScaledTrace trace_power(const Eigen::MatrixXcd& matrix, int power);

/// ln Tr(matrix^power); the dense route used to check the sector engine.
LogComplex log_trace_power(const Eigen::MatrixXcd& matrix, int power);

/// Row transfer matrix split into cyclic-momentum sectors.
///
/// T commutes with the cyclic shift of the column and with its reflection, so
/// Tr T^m = sum_k Tr T_k^m over momentum sectors with T_k and T_{-k} sharing
/// their trace. Sector blocks are roughly 2^n / n wide. Only the coupling part
/// is stored; the field enters as a diagonal rescaling at evaluation time, which
/// makes repeated evaluations along the imaginary field axis cheap.
class TransferEngine {
 public:
  /// Throws CapacityError when width > 14.
  TransferEngine(int width, double coupling, double beta);

  int width() const noexcept { return width_; }
  double beta() const noexcept { return beta_; }
  double coupling() const noexcept { return coupling_; }

  /// ln Tr T(field)^length. A trace that cancels to exactly zero is returned
  /// as LogComplex::zero().
  LogComplex log_partition(int length, std::complex<double> field) const;

  /// Tr T(field)^length in scaled form. Evaluations whose fields share a real
  /// part share log_offset.
  ScaledTrace trace(int length, std::complex<double> field) const;

  /// Total dimension across all evaluated sectors (diagnostics).
  std::size_t sector_count() const noexcept { return sectors_.size(); }

 private:
  struct Sector {
    int multiplicity = 1;
    std::vector<int> reps;  // indices into rep_states_
    Eigen::MatrixXcd coupling_block;
  };

  int width_;
  double coupling_;
  double beta_;
  std::vector<unsigned> rep_states_;
  std::vector<int> rep_bonds_;  // E(s) per representative
  std::vector<int> rep_mag_;    // m(s) per representative
  std::vector<Sector> sectors_;
};

/// ln Z via the transfer matrix across the smaller dimension; Z is symmetric
/// under swapping rows and columns. Throws CapacityError when both dimensions
/// exceed 14.
LogComplex log_partition_transfer(const LatticeSpec& spec, const ModelParams& params);

/// Exact zero-field ln Z on the torus from the Pfaffian (Kaufman) closed form.
/// Valid for any size; used for tori too wide for a transfer matrix.
/// Requires rows, cols >= 2.
double zero_field_log_partition(const LatticeSpec& spec, double coupling, double beta);

}  // namespace isingholo

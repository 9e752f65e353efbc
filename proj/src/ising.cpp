#include "isingholo/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "isingholo/errors.hpp"

namespace isingholo {
namespace {

int spin(unsigned state, int i) { return ((state >> i) & 1U) ? 1 : -1; }

/// E(s) = sum_i s_i s_{i+1}, periodic; for n = 1 this is the self-bond s_1 s_1.
int column_bonds(unsigned state, int n) {
  int e = 0;
  for (int i = 0; i < n; ++i) e += spin(state, i) * spin(state, (i + 1) % n);
  return e;
}

int magnetization(unsigned state, int n) {
  return 2 * std::popcount(state & ((1U << n) - 1U)) - n;
}

unsigned rotate(unsigned state, int n) {
  const unsigned mask = (1U << n) - 1U;
  return ((state << 1) | (state >> (n - 1))) & mask;
}

// Divides the matrix by the power of two nearest its largest entry magnitude
// (exact in floating point) and returns that exponent. A vanished matrix is
// left untouched and reported through `vanished`.
long rescale(Eigen::MatrixXcd& m, bool& vanished) {
  double top = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      top = std::max({top, std::abs(m(i, j).real()), std::abs(m(i, j).imag())});
    }
  }
  if (top == 0.0) {
    vanished = true;
    return 0;
  }
  int e = 0;
  std::frexp(top, &e);
  m *= std::ldexp(1.0, -e);
  return e;
}

double log_two_cosh(double y) {
  const double a = std::abs(y);
  return a + std::log1p(std::exp(-2.0 * a));
}

// ln|2 sinh y|; -inf for y == 0.
double log_two_sinh_abs(double y) {
  const double a = std::abs(y);
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return a + std::log(-std::expm1(-2.0 * a));
}

}  // namespace

LogComplex brute_force_log_partition(const LatticeSpec& spec, const ModelParams& params) {
  params.validate();
  if (spec.area() > kBruteForceMaxArea) {
    throw CapacityError("brute-force enumeration is limited to area <= 20, got " +
                        std::to_string(spec.area()));
  }
  const int rows = spec.rows();
  const int cols = spec.cols();
  const int area = static_cast<int>(spec.area());

  // Histogram over (bond sum, magnetization); both are integers of bounded range.
  const int bond_span = 4 * area + 1;
  const int mag_span = 2 * area + 1;
  std::vector<double> counts(static_cast<std::size_t>(bond_span) * mag_span, 0.0);
  auto site = [cols](int i, int j) { return i * cols + j; };
  const unsigned long total = 1UL << area;
  for (unsigned long config = 0; config < total; ++config) {
    auto s = [&](int i, int j) { return ((config >> site(i, j)) & 1UL) ? 1 : -1; };
    int bonds = 0;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        bonds += s(i, j) * s((i + 1) % rows, j) + s(i, j) * s(i, (j + 1) % cols);
      }
    }
    const int mag = 2 * std::popcount(config) - area;
    counts[static_cast<std::size_t>(bonds + 2 * area) * mag_span + (mag + area)] += 1.0;
  }

  const double k = params.beta * params.coupling;
  const std::complex<double> bh = params.beta * params.field;
  std::vector<LogComplex> terms;
  for (int b = 0; b < bond_span; ++b) {
    for (int m = 0; m < mag_span; ++m) {
      const double count = counts[static_cast<std::size_t>(b) * mag_span + m];
      if (count == 0.0) continue;
      const int bonds = b - 2 * area;
      const int mag = m - area;
      terms.emplace_back(std::log(count) + k * bonds + bh.real() * mag, bh.imag() * mag);
    }
  }
  return log_sum(terms);
}

Eigen::MatrixXcd build_transfer_matrix(int rows, const ModelParams& params,
                                       std::size_t memory_budget) {
  params.validate();
  if (rows < 1) throw UsageError("transfer matrix needs at least one row");
  if (rows > kTransferMaxWidth) {
    throw CapacityError("transfer matrix width " + std::to_string(rows) + " exceeds 14");
  }
  const std::size_t dim = std::size_t{1} << rows;
  if (dim * dim * sizeof(std::complex<double>) > memory_budget) {
    throw CapacityError("dense transfer matrix of width " + std::to_string(rows) +
                        " exceeds the memory budget");
  }
  const double k = params.beta * params.coupling;
  const std::complex<double> bh = params.beta * params.field;
  std::vector<std::complex<double>> half_diag(dim);
  for (unsigned s = 0; s < dim; ++s) {
    half_diag[s] = std::exp(0.5 * (k * column_bonds(s, rows) + bh * double(magnetization(s, rows))));
  }
  Eigen::MatrixXcd t(dim, dim);
  for (unsigned a = 0; a < dim; ++a) {
    for (unsigned b = 0; b <= a; ++b) {
      const int overlap = rows - 2 * std::popcount(a ^ b);
      t(a, b) = half_diag[a] * std::exp(k * overlap) * half_diag[b];
      t(b, a) = t(a, b);
    }
  }
  return t;
}

LogComplex ScaledTrace::to_log() const noexcept {
  const LogComplex m = LogComplex::from_value(mantissa);
  if (m.is_zero()) return m;
  return {m.log_mag() + static_cast<double>(exponent2) * std::numbers::ln2 + log_offset, m.phase()};
}

std::complex<double> ratio(const ScaledTrace& numerator, const ScaledTrace& denominator) {
  const std::complex<double> q = numerator.mantissa / denominator.mantissa;
  const double scale = std::exp(numerator.log_offset - denominator.log_offset);
  const long shift = numerator.exponent2 - denominator.exponent2;
  return {std::ldexp(q.real() * scale, static_cast<int>(shift)),
          std::ldexp(q.imag() * scale, static_cast<int>(shift))};
}

ScaledTrace trace_power(const Eigen::MatrixXcd& matrix, int power) {
  if (power < 1) throw UsageError("matrix power must be >= 1");
  bool vanished = false;
  Eigen::MatrixXcd base = matrix;
  long base_exp = rescale(base, vanished);
  Eigen::MatrixXcd result;
  long result_exp = 0;
  bool have_result = false;
  Eigen::MatrixXcd scratch;
  for (int p = power;;) {
    if (p & 1) {
      if (have_result) {
        scratch.noalias() = result * base;
        result.swap(scratch);
        result_exp += base_exp;
      } else {
        result = base;
        result_exp = base_exp;
        have_result = true;
      }
      result_exp += rescale(result, vanished);
    }
    p >>= 1;
    if (p == 0 || vanished) break;
    scratch.noalias() = base * base;
    base.swap(scratch);
    base_exp = 2 * base_exp + rescale(base, vanished);
  }
  ScaledTrace out;
  if (vanished) return out;
  out.mantissa = result.trace();
  out.exponent2 = result_exp;
  return out;
}

LogComplex log_trace_power(const Eigen::MatrixXcd& matrix, int power) {
  return trace_power(matrix, power).to_log();
}

TransferEngine::TransferEngine(int width, double coupling, double beta)
    : width_(width), coupling_(coupling), beta_(beta) {
  ModelParams{coupling, beta, {}}.validate();
  if (width < 1) throw UsageError("transfer matrix needs at least one row");
  if (width > kTransferMaxWidth) {
    throw CapacityError("transfer matrix width " + std::to_string(width) + " exceeds 14");
  }
  const int n = width;
  const unsigned dim = 1U << n;

  // Orbit representatives (smallest rotation) and their periods.
  std::vector<int> periods;
  for (unsigned s = 0; s < dim; ++s) {
    unsigned r = s;
    bool is_rep = true;
    int period = n;
    for (int l = 1; l <= n; ++l) {
      r = rotate(r, n);
      if (r < s) {
        is_rep = false;
        break;
      }
      if (r == s) {
        period = l;
        break;
      }
    }
    if (!is_rep) continue;
    rep_states_.push_back(s);
    rep_bonds_.push_back(column_bonds(s, n));
    rep_mag_.push_back(magnetization(s, n));
    periods.push_back(period);
  }

  // exp(K (overlap - n)) for overlap = n - 2 * popcount(a ^ b).
  const double k = beta * coupling;
  std::vector<double> bond_weight(n + 1);
  for (int pc = 0; pc <= n; ++pc) bond_weight[pc] = std::exp(-2.0 * k * pc);

  const int nreps = static_cast<int>(rep_states_.size());
  for (int momentum = 0; 2 * momentum <= n; ++momentum) {
    Sector sector;
    sector.multiplicity = (momentum == 0 || 2 * momentum == n) ? 1 : 2;
    for (int a = 0; a < nreps; ++a) {
      if ((momentum * periods[a]) % n == 0) sector.reps.push_back(a);
    }
    const int size = static_cast<int>(sector.reps.size());
    if (size == 0) continue;
    std::vector<std::complex<double>> phase(n);
    for (int l = 0; l < n; ++l) {
      phase[l] = std::polar(1.0, -2.0 * std::numbers::pi * momentum * l / n);
    }
    sector.coupling_block.resize(size, size);
    for (int ia = 0; ia < size; ++ia) {
      const int a = sector.reps[ia];
      const unsigned sa = rep_states_[a];
      for (int ib = 0; ib < size; ++ib) {
        const int b = sector.reps[ib];
        unsigned sb = rep_states_[b];
        std::complex<double> acc{0.0, 0.0};
        for (int l = 0; l < periods[b]; ++l) {
          acc += phase[l] * bond_weight[std::popcount(sa ^ sb)];
          sb = rotate(sb, n);
        }
        sector.coupling_block(ia, ib) =
            acc * std::sqrt(static_cast<double>(periods[a]) / periods[b]);
      }
    }
    sectors_.push_back(std::move(sector));
  }
}

ScaledTrace TransferEngine::trace(int length, std::complex<double> field) const {
  if (length < 1) throw UsageError("lattice length must be >= 1");
  const double k = beta_ * coupling_;
  const std::complex<double> bh = beta_ * field;
  if (!std::isfinite(bh.real()) || !std::isfinite(bh.imag())) throw DomainError("field must be finite");

  const int nreps = static_cast<int>(rep_states_.size());
  std::vector<double> half_real(nreps);
  double top = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < nreps; ++a) {
    half_real[a] = 0.5 * (k * rep_bonds_[a] + bh.real() * rep_mag_[a]);
    top = std::max(top, half_real[a]);
  }
  std::vector<std::complex<double>> half_diag(nreps);
  for (int a = 0; a < nreps; ++a) {
    half_diag[a] = std::polar(std::exp(half_real[a] - top), 0.5 * bh.imag() * rep_mag_[a]);
  }

  std::vector<ScaledTrace> parts;
  parts.reserve(sectors_.size());
  long top_exp = std::numeric_limits<long>::min();
  for (const Sector& sector : sectors_) {
    const int size = static_cast<int>(sector.reps.size());
    Eigen::MatrixXcd block(size, size);
    for (int j = 0; j < size; ++j) {
      const std::complex<double> dj = half_diag[sector.reps[j]];
      for (int i = 0; i < size; ++i) {
        block(i, j) = half_diag[sector.reps[i]] * sector.coupling_block(i, j) * dj;
      }
    }
    ScaledTrace part = trace_power(block, length);
    // Hermitian block for a real field: the trace is real.
    if (bh.imag() == 0.0) part.mantissa.imag(0.0);
    part.mantissa *= static_cast<double>(sector.multiplicity);
    if (part.is_zero()) continue;
    top_exp = std::max(top_exp, part.exponent2);
    parts.push_back(part);
  }

  ScaledTrace out;
  out.log_offset = static_cast<double>(length) * (k * width_ + 2.0 * top);
  if (parts.empty()) return out;
  for (const ScaledTrace& part : parts) {
    const int shift = static_cast<int>(part.exponent2 - top_exp);
    out.mantissa += std::complex<double>(std::ldexp(part.mantissa.real(), shift),
                                         std::ldexp(part.mantissa.imag(), shift));
  }
  out.exponent2 = top_exp;
  return out;
}

LogComplex TransferEngine::log_partition(int length, std::complex<double> field) const {
  return trace(length, field).to_log();
}

LogComplex log_partition_transfer(const LatticeSpec& spec, const ModelParams& params) {
  params.validate();
  const int width = std::min(spec.rows(), spec.cols());
  const int length = std::max(spec.rows(), spec.cols());
  if (width > kTransferMaxWidth) {
    throw CapacityError("both lattice dimensions exceed 14 (" + std::to_string(spec.rows()) + "x" +
                        std::to_string(spec.cols()) + ")");
  }
  const TransferEngine engine(width, params.coupling, params.beta);
  return engine.log_partition(length, params.field);
}

double zero_field_log_partition(const LatticeSpec& spec, double coupling, double beta) {
  if (spec.rows() < 2 || spec.cols() < 2) {
    throw UsageError("zero-field closed form needs both dimensions >= 2");
  }
  const double k = beta * coupling;
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("closed form needs beta * J > 0");
  const int n = spec.cols();
  const double m = spec.rows();

  const double s2k = std::sinh(2.0 * k);
  // cosh 2K coth 2K - 2, written without cancellation near criticality.
  const double shift = (s2k - 1.0) * (s2k - 1.0) / s2k;
  // gamma_l with cosh(gamma_l) = cosh 2K coth 2K - cos(l pi / n), l >= 1.
  auto gamma = [&](int l) {
    if (l == 0) return 2.0 * k + std::log(std::tanh(k));
    const double sn = std::sin(std::numbers::pi * l / (2.0 * n));
    const double x = shift + 2.0 * sn * sn;
    return std::log1p(x + std::sqrt(x * (x + 2.0)));
  };

  double log_z1 = 0.0;
  double log_z2 = 0.0;
  double log_z3 = 0.0;
  double log_z4 = 0.0;
  double sign_z4 = 1.0;
  for (int r = 0; r < n; ++r) {
    const double odd = 0.5 * m * gamma(2 * r + 1);
    const double even = 0.5 * m * gamma(2 * r);
    log_z1 += log_two_cosh(odd);
    log_z2 += log_two_sinh_abs(odd);
    log_z3 += log_two_cosh(even);
    log_z4 += log_two_sinh_abs(even);
    if (even < 0.0) sign_z4 = -sign_z4;
  }
  const std::vector<LogComplex> terms{
      {log_z1, 0.0}, {log_z2, 0.0}, {log_z3, 0.0},
      {log_z4, sign_z4 > 0 ? 0.0 : std::numbers::pi}};
  const LogComplex sum = log_sum(terms);
  return -std::log(2.0) + 0.5 * m * n * std::log(2.0 * s2k) + sum.log_mag();
}

}  // namespace isingholo

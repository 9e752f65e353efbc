// isingholo-cli: coherence data, reconstruction, central-charge fits.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isingholo/coherence.hpp"
#include "isingholo/errors.hpp"
#include "isingholo/holography.hpp"
#include "isingholo/ising.hpp"
#include "isingholo/report.hpp"
#include "isingholo/scaling.hpp"

using namespace isingholo;

namespace {

constexpr double kPi = std::numbers::pi;

struct Common {
  double beta = critical_beta();
  double h = 0.1;
  int points = 394;
  std::string period = "2pi";
  std::string rule = "trapezoid";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool quadrature) {
  cmd->set_help_flag("--help", "print this help");
  cmd->add_option("--beta", c.beta, "inverse temperature (J = 1)")->capture_default_str();
  cmd->add_option("--h", c.h, "real bath field")->capture_default_str();
  cmd->add_option("--points", c.points, "grid points, 1 mod 3")->capture_default_str();
  cmd->add_option("--period", c.period, "auto | 2pi | pi | pi/2 | <number>")->capture_default_str();
  if (quadrature) cmd->add_option("--rule", c.rule, "trapezoid | simpson38")->capture_default_str();
  cmd->add_option("-o,--out", c.out, "output file (default stdout)");
}

// Period of the u grid; "auto" measures it on the lattice.
double resolve_period(const std::string& text, const LatticeSpec& spec, double beta, double h) {
  if (text == "auto") return measured_period(spec, beta, h);
  if (text == "2pi") return 2.0 * kPi;
  if (text == "pi") return kPi;
  if (text == "pi/2") return kPi / 2.0;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("unrecognized --period '" + text + "'");
}

void check_period_syntax(const std::string& text) {
  if (text == "auto") return;
  validate_series_grid(4, resolve_period(text, LatticeSpec(1, 1), 1.0, 0.0));
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file_atomic(path, content);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LatticeSpec parse_lattice(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("lattice '" + text + "' is not of the form NxM");
  try {
    std::size_t a = 0;
    std::size_t b = 0;
    const int rows = std::stoi(text.substr(0, x), &a);
    const int cols = std::stoi(text.substr(x + 1), &b);
    if (a != x || b != text.size() - x - 1) throw UsageError("");
    return {rows, cols};
  } catch (const std::logic_error&) {
    throw UsageError("lattice '" + text + "' is not of the form NxM");
  }
}

void validate_common(const Common& c, bool needs_field) {
  ModelParams{1.0, c.beta, {c.h, 0.0}}.validate();
  if (!(c.beta > 0.0)) throw DomainError("beta must be > 0 for coherence data");
  validate_series_grid(c.points, 2.0 * kPi);
  check_period_syntax(c.period);
  parse_quadrature_rule(c.rule);
  if (needs_field && !(c.h > 0.0)) throw ContourError("--h must be > 0 to enclose the zero field");
}

double direct_f(const LatticeSpec& spec, double beta) {
  return -log_partition_transfer(spec, {1.0, beta, {}}).log_mag() / spec.area();
}

FreeEnergyPoint free_energy_point(const LatticeSpec& spec, const Common& c, bool direct) {
  if (direct) return FreeEnergyPoint::from_per_site(spec, direct_f(spec, c.beta), FreeEnergyMethod::direct);
  const QuadratureConfig quad{c.points, resolve_period(c.period, spec, c.beta, c.h), parse_quadrature_rule(c.rule)};
  const FreeEnergyEstimate e = free_energy_at_zero_field(spec, c.beta, c.h, quad);
  return FreeEnergyPoint::from_per_site(spec, e.f_per_site, FreeEnergyMethod::reconstructed);
}

// --- coherence ------------------------------------------------------------

struct CoherenceArgs {
  Common common;
  int rows = 6;
  int cols = 50;
};

int run_coherence(const CoherenceArgs& a) {
  const LatticeSpec spec(a.rows, a.cols);
  validate_common(a.common, false);
  const double period = resolve_period(a.common.period, spec, a.common.beta, a.common.h);
  validate_series_grid(a.common.points, period);
  emit(a.common.out, coherence_csv(coherence_series(spec, a.common.beta, a.common.h, a.common.points, period)));
  return 0;
}

// --- reconstruct ----------------------------------------------------------

struct ReconstructArgs {
  Common common;
  int rows = 6;
  int cols = 50;
  double lambda_prime = 0.0;
  std::string from_csv;
};

int run_reconstruct(const ReconstructArgs& a) {
  const QuadratureRule rule = parse_quadrature_rule(a.common.rule);
  CoherenceSeries series;
  if (!a.from_csv.empty()) {
    series = parse_coherence_csv(read_file(a.from_csv));
  } else {
    const LatticeSpec spec(a.rows, a.cols);
    validate_common(a.common, true);
    if (!(std::abs(a.lambda_prime) < a.common.h)) {
      throw ContourError("--lambda-prime must satisfy |lambda'| < h");
    }
    const double period = resolve_period(a.common.period, spec, a.common.beta, a.common.h);
    validate_series_grid(a.common.points, period);
    series = coherence_series(spec, a.common.beta, a.common.h, a.common.points, period);
  }
  const FreeEnergyEstimate e = free_energy_from_series(series, rule, a.lambda_prime);
  emit(a.common.out, reconstruction_json(series, e));
  return 0;
}

// --- fit-c ----------------------------------------------------------------

struct FitArgs {
  Common common;
  std::vector<int> rows{6, 7, 8, 9, 10};
  std::vector<int> cols{50};
  bool direct = false;
  std::string points_csv;
};

int run_fit(const FitArgs& a) {
  if (!a.direct) validate_common(a.common, true);
  if (std::set<int>(a.rows.begin(), a.rows.end()).size() < 3) {
    throw UsageError("fit-c needs at least 3 distinct --rows values");
  }
  std::vector<CentralChargeFit> fits;
  for (const int m : a.cols) {
    std::vector<FreeEnergyPoint> pts;
    for (const int n : a.rows) pts.push_back(free_energy_point({n, m}, a.common, a.direct));
    fits.push_back(fit_central_charge_strip(pts));
  }
  std::string json;
  std::string csv;
  if (fits.size() == 1) {
    json = fit_json(fits.front());
    csv = fit_points_csv(fits.front());
  } else {
    // One fit per strip length.
    json = "{\"sweep\": [";
    for (std::size_t i = 0; i < fits.size(); ++i) {
      json += (i ? ", " : "") + fit_json(fits[i]);
      const std::string part = fit_points_csv(fits[i]);
      csv += i ? part.substr(part.find('\n') + 1) : part;
    }
    json += "]}\n";
  }
  if (!a.points_csv.empty()) write_file_atomic(a.points_csv, csv);
  emit(a.common.out, json);
  return 0;
}

// --- elongation -----------------------------------------------------------

struct ElongationArgs {
  Common common;
  std::vector<std::string> lattices{"2x50", "4x25", "5x20", "10x10"};
  bool direct = false;
  bool swapped = false;
  std::string fit_out;
};

int run_elongation(const ElongationArgs& a) {
  std::vector<LatticeSpec> specs;
  for (const std::string& text : a.lattices) specs.push_back(parse_lattice(text));
  if (a.swapped) {
    const std::size_t n = specs.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (specs[i].rows() != specs[i].cols()) specs.push_back(specs[i].transposed());
    }
  }
  for (const LatticeSpec& s : specs) {
    if (s.area() != specs.front().area()) throw UsageError("elongation lattices must share one area");
  }
  if (!a.direct) validate_common(a.common, true);
  std::vector<FreeEnergyPoint> pts;
  for (const LatticeSpec& s : specs) pts.push_back(free_energy_point(s, a.common, a.direct));
  const std::vector<ElongationRow> rows = elongation_curve(pts);
  if (!a.fit_out.empty()) write_file_atomic(a.fit_out, fit_json(fit_central_charge_aspect(pts)));
  emit(a.common.out, elongation_csv(rows));
  return 0;
}

// --- oracle ---------------------------------------------------------------

struct OracleArgs {
  int area_limit = 16;
  std::string inject_fault;
};

int run_oracle(const OracleArgs& a) {
  if (a.area_limit < 1 || a.area_limit > kBruteForceMaxArea) {
    throw UsageError("--area-limit must be in [1, 20]");
  }
  if (!a.inject_fault.empty() && a.inject_fault != "kernel-sign") {
    throw UsageError("unknown fault '" + a.inject_fault + "'");
  }
  constexpr double kTransferTol = 1e-10;
  constexpr double kReconstructTol = 1e-8;
  double transfer_dev = 0.0;
  double reconstruct_dev = 0.0;
  double residual = 0.0;
  int lattices = 0;
  int evaluations = 0;
  for (int rows = 1; rows <= a.area_limit; ++rows) {
    for (int cols = 1; rows * cols <= a.area_limit; ++cols) {
      const LatticeSpec spec(rows, cols);
      ++lattices;
      for (const double beta : {0.2, critical_beta(), 0.7}) {
        for (const double h : {0.1, 0.3}) {
          const LogComplex scale = brute_force_log_partition(spec, {1.0, beta, {h, 0.0}});
          for (const double u : {0.0, 0.7, 2.0, 3.9, 5.5}) {
            const ModelParams p{1.0, beta, {h, u / beta}};
            const std::complex<double> bf = (brute_force_log_partition(spec, p) / scale).value();
            const std::complex<double> tm = (log_partition_transfer(spec, p) / scale).value();
            transfer_dev = std::max(transfer_dev, std::abs(bf - tm));
            ++evaluations;
          }
        }
        // Source field well away from the targets keeps the kernel smooth on the grid.
        const double h = 0.5;
        const CoherenceSeries series = coherence_series(spec, beta, h, 394, measured_period(spec, beta, h));
        for (const double target : {0.0, 0.1}) {
          ReconstructionResult r = reconstruct_ratio_periodic(series, target);
          // Flipping the kernel sign negates the integral.
          if (a.inject_fault == "kernel-sign") r.ratio = r.ratio * LogComplex::from_value(-1.0);
          const double exact = std::exp(brute_force_log_partition(spec, {1.0, beta, {target, 0.0}}).log_mag() -
                                        brute_force_log_partition(spec, {1.0, beta, {h, 0.0}}).log_mag());
          reconstruct_dev = std::max(reconstruct_dev, std::abs(r.ratio.value() / exact - 1.0));
          residual = std::max(residual, r.residual_imag);
        }
      }
    }
  }
  const bool transfer_ok = transfer_dev <= kTransferTol;
  const bool reconstruct_ok = reconstruct_dev <= kReconstructTol && residual <= kReconstructTol;
  std::printf("lattices: %d (area <= %d), transfer evaluations: %d\n", lattices, a.area_limit, evaluations);
  std::printf("transfer vs brute force:       max dev %.3e  tol %.0e  %s\n", transfer_dev, kTransferTol,
              transfer_ok ? "ok" : "FAIL");
  std::printf("reconstruction vs brute force: max dev %.3e  tol %.0e  %s\n", reconstruct_dev, kReconstructTol,
              reconstruct_dev <= kReconstructTol ? "ok" : "FAIL");
  std::printf("reconstruction residual_imag:  max     %.3e  tol %.0e  %s\n", residual, kReconstructTol,
              residual <= kReconstructTol ? "ok" : "FAIL");
  return transfer_ok && reconstruct_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ising bath coherence, holographic reconstruction and central-charge fits"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: ISINGHOLO_THREADS or all cores)");

  CoherenceArgs coh;
  CLI::App* c_coh = app.add_subcommand("coherence", "sample the probe coherence over one period (CSV)");
  c_coh->add_option("--rows", coh.rows)->capture_default_str();
  c_coh->add_option("--cols", coh.cols)->capture_default_str();
  add_common(c_coh, coh.common, false);

  ReconstructArgs rec;
  CLI::App* c_rec = app.add_subcommand("reconstruct", "free energy from coherence data (JSON)");
  c_rec->add_option("--rows", rec.rows)->capture_default_str();
  c_rec->add_option("--cols", rec.cols)->capture_default_str();
  c_rec->add_option("--lambda-prime", rec.lambda_prime, "target real field, |lambda'| < h")->capture_default_str();
  c_rec->add_option("--from-csv", rec.from_csv, "coherence CSV written by the coherence command");
  add_common(c_rec, rec.common, true);

  FitArgs fit;
  CLI::App* c_fit = app.add_subcommand("fit-c", "central charge from strips N x M (JSON)");
  c_fit->add_option("--rows", fit.rows, "strip widths")->delimiter(',')->capture_default_str();
  c_fit->add_option("--cols", fit.cols, "strip length; several values run one fit each")->delimiter(',')->capture_default_str();
  c_fit->add_flag("--direct", fit.direct, "use the h = 0 transfer matrix instead of reconstruction");
  c_fit->add_option("--points-csv", fit.points_csv, "also write the fitted points as CSV");
  add_common(c_fit, fit.common, true);

  ElongationArgs el;
  CLI::App* c_el = app.add_subcommand("elongation", "F_total against aspect ratio at fixed area (CSV)");
  c_el->add_option("--lattices", el.lattices, "NxM list")->delimiter(',')->capture_default_str();
  c_el->add_flag("--direct", el.direct, "use the h = 0 transfer matrix instead of reconstruction");
  c_el->add_flag("--swapped", el.swapped, "add the transposed lattices");
  c_el->add_option("--fit-json", el.fit_out, "write the aspect-ratio fit of c");
  add_common(c_el, el.common, true);

  OracleArgs orc;
  CLI::App* c_orc = app.add_subcommand("oracle", "brute force vs transfer matrix vs reconstruction");
  c_orc->add_option("--area-limit", orc.area_limit)->capture_default_str();
  c_orc->add_option("--inject-fault", orc.inject_fault, "kernel-sign");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (threads > 0) setenv("ISINGHOLO_THREADS", std::to_string(threads).c_str(), 1);

  try {
    if (c_coh->parsed()) return run_coherence(coh);
    if (c_rec->parsed()) return run_reconstruct(rec);
    if (c_fit->parsed()) return run_fit(fit);
    if (c_el->parsed()) return run_elongation(el);
    if (c_orc->parsed()) return run_oracle(orc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

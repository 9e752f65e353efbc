#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "isingholo/coherence.hpp"
#include "isingholo/errors.hpp"
#include "isingholo/holography.hpp"
#include "isingholo/ising.hpp"
#include "isingholo/report.hpp"
#include "isingholo/scaling.hpp"

namespace py = pybind11;
using namespace isingholo;
using py::literals::operator""_a;

namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

py::tuple as_tuple(const LogComplex& z) { return py::make_tuple(z.log_mag(), z.phase()); }

py::dict reconstruction_dict(const ReconstructionResult& r) {
  return py::dict("ratio_log_mag"_a = r.ratio.log_mag(), "ratio_phase"_a = r.ratio.phase(),
                  "integral"_a = r.integral, "residual_imag"_a = r.residual_imag,
                  "target_field"_a = r.target_field, "source_field"_a = r.source_field,
                  "points"_a = r.quadrature.points, "period"_a = r.quadrature.period,
                  "rule"_a = to_string(r.quadrature.rule), "kernel_period"_a = r.kernel_period);
}

py::dict free_energy_dict(const FreeEnergyEstimate& e) {
  py::dict d = reconstruction_dict(e.reconstruction);
  d["f_per_site"] = e.f_per_site;
  d["log_z_source"] = e.log_z_source;
  return d;
}

py::dict fit_dict(const CentralChargeFit& fit) {
  py::list points;
  for (std::size_t i = 0; i < fit.points.size(); ++i) {
    const FreeEnergyPoint& p = fit.points[i];
    points.append(py::dict("N"_a = p.spec.rows(), "M"_a = p.spec.cols(), "f"_a = p.f, "F_total"_a = p.F_total,
                           "residual"_a = fit.residuals[i]));
  }
  return py::dict("slope"_a = fit.slope, "slope_stderr"_a = fit.slope_stderr, "intercept"_a = fit.intercept,
                  "intercept_stderr"_a = fit.intercept_stderr, "c"_a = fit.c, "c_stderr"_a = fit.c_stderr,
                  "points"_a = points);
}

std::vector<FreeEnergyPoint> to_points(const std::vector<std::tuple<int, int, double>>& rows,
                                       FreeEnergyMethod method) {
  std::vector<FreeEnergyPoint> out;
  for (const auto& [n, m, f] : rows) out.push_back(FreeEnergyPoint::from_per_site({n, m}, f, method));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ising bath partition functions, probe coherence and holographic reconstruction";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto usage = py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", usage.ptr());
  py::register_exception<ContourError>(m, "ContourError", usage.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
  py::register_exception<QuadratureBreakdown>(m, "QuadratureBreakdown", error.ptr());

  m.def("critical_beta", &critical_beta, "ln(1 + sqrt 2) / 2");

  m.def(
      "log_partition",
      [](int rows, int cols, double beta, Complex h, double coupling, const std::string& method) {
        const LatticeSpec spec(rows, cols);
        const ModelParams p{coupling, beta, h};
        if (method == "transfer") return as_tuple(log_partition_transfer(spec, p));
        if (method == "brute") return as_tuple(brute_force_log_partition(spec, p));
        throw UsageError("method must be 'transfer' or 'brute'");
      },
      "rows"_a, "cols"_a, "beta"_a, "h"_a = Complex{0.0, 0.0}, "coupling"_a = 1.0, "method"_a = "transfer",
      "(ln|Z|, arg Z) of the periodic rows x cols lattice at complex field h.");

  m.def(
      "zero_field_log_partition",
      [](int rows, int cols, double beta, double coupling) {
        return zero_field_log_partition({rows, cols}, coupling, beta);
      },
      "rows"_a, "cols"_a, "beta"_a = critical_beta(), "coupling"_a = 1.0,
      "ln Z at h = 0 from the closed form (any size, both dimensions >= 2).");

  m.def(
      "coherence_at",
      [](int rows, int cols, double beta, double h, double u, double coupling) {
        return coherence_at({rows, cols}, beta, h, u, coupling);
      },
      "rows"_a, "cols"_a, "beta"_a, "h"_a, "u"_a, "coupling"_a = 1.0, py::call_guard<py::gil_scoped_release>());

  m.def(
      "measured_period",
      [](int rows, int cols, double beta, double h) { return measured_period({rows, cols}, beta, h); }, "rows"_a,
      "cols"_a, "beta"_a, "h"_a);

  py::class_<CoherenceSeries>(m, "CoherenceSeries")
      .def_property_readonly("rows", [](const CoherenceSeries& s) { return s.spec.rows(); })
      .def_property_readonly("cols", [](const CoherenceSeries& s) { return s.spec.cols(); })
      .def_readonly("beta", &CoherenceSeries::beta)
      .def_readonly("field", &CoherenceSeries::field)
      .def_readonly("period", &CoherenceSeries::period)
      .def_readwrite("signal_period", &CoherenceSeries::signal_period)
      .def_property_readonly("points", &CoherenceSeries::points)
      .def_property_readonly("u",
                             [](const CoherenceSeries& s) {
                               py::array_t<double> out(s.points());
                               auto v = out.mutable_unchecked<1>();
                               for (int k = 0; k < s.points(); ++k) v(k) = s.u(k);
                               return out;
                             })
      .def_property_readonly("values",
                             [](const CoherenceSeries& s) {
                               return py::array_t<Complex>(static_cast<py::ssize_t>(s.values.size()),
                                                           s.values.data());
                             })
      .def("to_csv", &coherence_csv)
      .def_static("from_csv", &parse_coherence_csv, "text"_a)
      .def("verify",
           [](const CoherenceSeries& s) {
             const SeriesDiagnostics d = verify_series(s);
             return py::dict("normalization_defect"_a = d.normalization_defect,
                             "magnitude_excess"_a = d.magnitude_excess, "conjugate_defect"_a = d.conjugate_defect,
                             "periodicity_defect"_a = d.periodicity_defect, "grid_valid"_a = d.grid_valid,
                             "ok"_a = d.ok());
           })
      .def("__repr__", [](const CoherenceSeries& s) {
        return "<CoherenceSeries " + std::to_string(s.spec.rows()) + "x" + std::to_string(s.spec.cols()) +
               " points=" + std::to_string(s.points()) + ">";
      });

  m.def(
      "coherence_series",
      [](int rows, int cols, double beta, double h, int points, double period, double coupling) {
        return coherence_series({rows, cols}, beta, h, points, period, coupling);
      },
      "rows"_a, "cols"_a, "beta"_a = critical_beta(), "h"_a = 0.1, "points"_a = 394, "period"_a = kTwoPi,
      "coupling"_a = 1.0, py::call_guard<py::gil_scoped_release>());

  m.def(
      "reconstruct_ratio",
      [](const CoherenceSeries& s, double target, const std::string& rule) {
        return reconstruction_dict(reconstruct_ratio_periodic(s, target, parse_quadrature_rule(rule)));
      },
      "series"_a, "target"_a = 0.0, "rule"_a = "trapezoid",
      "Z(beta, target) / Z(beta, h) from the coherence series alone.");

  m.def(
      "free_energy",
      [](const CoherenceSeries& s, double target, const std::string& rule) {
        return free_energy_dict(free_energy_from_series(s, parse_quadrature_rule(rule), target));
      },
      "series"_a, "target"_a = 0.0, "rule"_a = "trapezoid");

  m.def(
      "free_energy_at_zero_field",
      [](int rows, int cols, double beta, double h, int points, double period, const std::string& rule) {
        const QuadratureConfig quad{points, period, parse_quadrature_rule(rule)};
        FreeEnergyEstimate e;
        {
          py::gil_scoped_release release;
          e = free_energy_at_zero_field({rows, cols}, beta, h, quad);
        }
        return free_energy_dict(e);
      },
      "rows"_a, "cols"_a, "beta"_a = critical_beta(), "h"_a = 0.1, "points"_a = 394, "period"_a = kTwoPi,
      "rule"_a = "trapezoid");

  m.def(
      "fit_central_charge_strip",
      [](const std::vector<std::tuple<int, int, double>>& points) {
        return fit_dict(fit_central_charge_strip(to_points(points, FreeEnergyMethod::reconstructed)));
      },
      "points"_a, "Strip fit of f against 1/N^2 from (N, M, f) triples.");

  m.def(
      "fit_central_charge_aspect",
      [](const std::vector<std::tuple<int, int, double>>& points) {
        return fit_dict(fit_central_charge_aspect(to_points(points, FreeEnergyMethod::reconstructed)));
      },
      "points"_a, "Fixed-area fit of F_total against -(pi/6)(x + 1/x) from (N, M, f) triples.");
}

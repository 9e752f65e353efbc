#include "isingholo/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "isingholo/errors.hpp"

namespace isingholo {

std::string to_string(FreeEnergyMethod method) {
  return method == FreeEnergyMethod::direct ? "direct" : "reconstructed";
}

FreeEnergyPoint FreeEnergyPoint::from_per_site(const LatticeSpec& spec, double f,
                                               FreeEnergyMethod method) {
  if (!std::isfinite(f)) throw UsageError("free energy must be finite");
  return {spec, f, f * static_cast<double>(spec.area()), method};
}

LinearFit ordinary_least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw UsageError("regression inputs differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw UsageError("a fit needs at least 3 points, got " + std::to_string(n));
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double scale = std::max(1.0, std::abs(mx));
  if (sxx <= 1e-24 * scale * scale * n) {
    throw UsageError("rank-deficient fit: regressor takes a single value");
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += fit.residuals[i] * fit.residuals[i];
  }
  const double s2 = ssr / static_cast<double>(n - 2);
  fit.slope_stderr = std::sqrt(s2 / sxx);
  fit.intercept_stderr = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  return fit;
}

namespace {

CentralChargeFit package(const LinearFit& lin, double c, double c_stderr,
                         const std::vector<FreeEnergyPoint>& points) {
  CentralChargeFit fit;
  fit.slope = lin.slope;
  fit.slope_stderr = lin.slope_stderr;
  fit.intercept = lin.intercept;
  fit.intercept_stderr = lin.intercept_stderr;
  fit.c = c;
  fit.c_stderr = c_stderr;
  fit.points = points;
  fit.residuals = lin.residuals;
  return fit;
}

}  // namespace

CentralChargeFit fit_central_charge_strip(const std::vector<FreeEnergyPoint>& points) {
  if (points.size() < 3) {
    throw UsageError("strip fit needs at least 3 lattices, got " + std::to_string(points.size()));
  }
  const int cols = points.front().spec.cols();
  std::vector<double> x;
  std::vector<double> y;
  for (const FreeEnergyPoint& p : points) {
    if (p.spec.cols() != cols) {
      throw UsageError("strip fit needs a common length M; got " + std::to_string(cols) + " and " +
                       std::to_string(p.spec.cols()));
    }
    const double n = p.spec.rows();
    x.push_back(1.0 / (n * n));
    y.push_back(p.f);
  }
  const LinearFit lin = ordinary_least_squares(x, y);
  const double to_c = 6.0 / std::numbers::pi;
  return package(lin, -lin.slope * to_c, lin.slope_stderr * to_c, points);
}

std::vector<ElongationRow> elongation_curve(const std::vector<FreeEnergyPoint>& points) {
  if (points.empty()) throw UsageError("elongation curve needs at least one lattice");
  const long area = points.front().spec.area();
  std::vector<ElongationRow> rows;
  for (const FreeEnergyPoint& p : points) {
    if (p.spec.area() != area) {
      throw UsageError("elongation curve needs a fixed area; got " + std::to_string(area) +
                       " and " + std::to_string(p.spec.area()));
    }
    const double x = p.spec.aspect_ratio();
    rows.push_back({p.spec, x, std::log(x), p.F_total, p.f, std::log(std::abs(p.F_total))});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ElongationRow& a, const ElongationRow& b) { return a.x < b.x; });
  return rows;
}

CentralChargeFit fit_central_charge_aspect(const std::vector<FreeEnergyPoint>& points) {
  if (points.size() < 3) {
    throw UsageError("aspect fit needs at least 3 lattices, got " + std::to_string(points.size()));
  }
  const long area = points.front().spec.area();
  std::vector<double> x;
  std::vector<double> y;
  std::set<std::pair<long, long>> shapes;
  for (const FreeEnergyPoint& p : points) {
    if (p.spec.area() != area) throw UsageError("aspect fit needs a fixed area");
    const double ratio = p.spec.aspect_ratio();
    x.push_back(-(std::numbers::pi / 6.0) * (ratio + 1.0 / ratio));
    y.push_back(p.F_total);
    shapes.insert(std::minmax<long>(p.spec.rows(), p.spec.cols()));
  }
  if (shapes.size() < 3) {
    throw UsageError("aspect fit needs at least 3 distinct aspect ratios, got " +
                     std::to_string(shapes.size()));
  }
  const LinearFit lin = ordinary_least_squares(x, y);
  return package(lin, lin.slope, lin.slope_stderr, points);
}

}  // namespace isingholo

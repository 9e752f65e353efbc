#include "isingholo/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "isingholo/errors.hpp"

namespace isingholo {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string coherence_csv(const CoherenceSeries& series) {
  std::ostringstream out;
  out << "# coherence N=" << series.spec.rows() << " M=" << series.spec.cols()
      << " beta=" << format_double(series.beta) << " h=" << format_double(series.field)
      << " eta=1 period=" << format_double(series.period) << " points=" << series.points() << "\n";
  if (series.signal_period > 0.0) out << "# signal_period=" << format_double(series.signal_period) << "\n";
  out << "u,re,im\n";
  for (int k = 0; k < series.points(); ++k) {
    const auto& v = series.values[k];
    out << format_double(series.u(k)) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << "\n";
  }
  return out.str();
}

namespace {

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("coherence CSV: cannot parse " + what + " '" + text + "'");
  }
}

}  // namespace

CoherenceSeries parse_coherence_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# coherence", 0) != 0) {
    throw UsageError("coherence CSV: missing '# coherence' header line");
  }
  std::map<std::string, std::string> fields;
  std::istringstream header(line.substr(std::string("# coherence").size()));
  for (std::string token; header >> token;) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw UsageError("coherence CSV: bad header token '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (const char* key : {"N", "M", "beta", "h", "eta", "period", "points"}) {
    if (!fields.contains(key)) throw UsageError(std::string("coherence CSV: header lacks ") + key);
  }
  const int rows = static_cast<int>(parse_number(fields["N"], "N"));
  const int cols = static_cast<int>(parse_number(fields["M"], "M"));
  const int points = static_cast<int>(parse_number(fields["points"], "points"));
  if (parse_number(fields["eta"], "eta") != 1.0) throw UsageError("coherence CSV: only eta=1 is supported");

  CoherenceSeries series;
  series.spec = LatticeSpec(rows, cols);
  series.beta = parse_number(fields["beta"], "beta");
  series.field = parse_number(fields["h"], "h");
  series.period = parse_number(fields["period"], "period");

  if (std::getline(in, line) && line.rfind("# signal_period=", 0) == 0) {
    series.signal_period = parse_number(line.substr(std::string("# signal_period=").size()), "signal_period");
    std::getline(in, line);
  }
  if (!in || line != "u,re,im") {
    throw UsageError("coherence CSV: expected column header 'u,re,im'");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string u;
    std::string re;
    std::string im;
    if (!std::getline(row, u, ',') || !std::getline(row, re, ',') || !std::getline(row, im)) {
      throw UsageError("coherence CSV: malformed row '" + line + "'");
    }
    series.values.emplace_back(parse_number(re, "re"), parse_number(im, "im"));
  }
  if (series.points() != points) {
    throw UsageError("coherence CSV: header says " + std::to_string(points) + " points, found " +
                     std::to_string(series.points()));
  }
  validate_series_grid(points, series.period);
  return series;
}

std::string reconstruction_json(const CoherenceSeries& series, const FreeEnergyEstimate& estimate) {
  const ReconstructionResult& r = estimate.reconstruction;
  ordered_json j;
  j["N"] = series.spec.rows();
  j["M"] = series.spec.cols();
  j["beta"] = series.beta;
  j["h"] = series.field;
  j["lambda_prime"] = r.target_field.real();
  j["points"] = r.quadrature.points;
  j["period"] = r.quadrature.period;
  j["kernel_period"] = r.kernel_period;
  j["rule"] = to_string(r.quadrature.rule);
  j["ratio_log_mag"] = r.ratio.log_mag();
  j["ratio_phase"] = r.ratio.phase();
  j["residual_imag"] = r.residual_imag;
  j["f_per_site"] = estimate.f_per_site;
  return j.dump(2) + "\n";
}

std::string fit_json(const CentralChargeFit& fit) {
  ordered_json j;
  j["slope"] = fit.slope;
  j["slope_stderr"] = fit.slope_stderr;
  j["intercept"] = fit.intercept;
  j["c"] = fit.c;
  j["c_stderr"] = fit.c_stderr;
  j["points"] = ordered_json::array();
  for (std::size_t i = 0; i < fit.points.size(); ++i) {
    ordered_json p;
    p["N"] = fit.points[i].spec.rows();
    p["M"] = fit.points[i].spec.cols();
    p["f"] = fit.points[i].f;
    p["residual"] = fit.residuals[i];
    j["points"].push_back(p);
  }
  return j.dump(2) + "\n";
}

std::string fit_points_csv(const CentralChargeFit& fit) {
  std::ostringstream out;
  out << "N,M,f,residual,method\n";
  for (std::size_t i = 0; i < fit.points.size(); ++i) {
    const FreeEnergyPoint& p = fit.points[i];
    out << p.spec.rows() << ',' << p.spec.cols() << ',' << format_double(p.f) << ','
        << format_double(fit.residuals[i]) << ',' << to_string(p.method) << "\n";
  }
  return out.str();
}

std::string elongation_csv(const std::vector<ElongationRow>& rows) {
  std::ostringstream out;
  out << "x,ln_x,F_total,f_per_site,ln_abs_F_total,N,M\n";
  for (const ElongationRow& r : rows) {
    out << format_double(r.x) << ',' << format_double(r.ln_x) << ',' << format_double(r.F_total)
        << ',' << format_double(r.f_per_site) << ',' << format_double(r.ln_abs_F) << ','
        << r.spec.rows() << ',' << r.spec.cols() << "\n";
  }
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw Error("failed writing " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

}  // namespace isingholo

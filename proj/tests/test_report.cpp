#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "isingholo/errors.hpp"
#include "isingholo/report.hpp"

using namespace isingholo;
using nlohmann::json;

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = dist(rng) * std::pow(10.0, i % 40 - 20);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("coherence CSV layout and round-trip") {
  const CoherenceSeries s = coherence_series({3, 4}, 0.44, 0.1, 13);
  const std::string text = coherence_csv(s);
  std::istringstream in(text);
  std::string header;
  std::string columns;
  std::getline(in, header);
  std::string period_line;
  std::getline(in, period_line);
  std::getline(in, columns);
  CHECK(header.rfind("# coherence N=3 M=4 beta=0.44", 0) == 0);
  CHECK(period_line == "# signal_period=3.1415926535897931");
  CHECK(header.find(" eta=1 ") != std::string::npos);
  CHECK(header.find(" points=13") != std::string::npos);
  CHECK(columns == "u,re,im");

  const CoherenceSeries back = parse_coherence_csv(text);
  CHECK(back.spec == s.spec);
  CHECK(back.beta == s.beta);
  CHECK(back.field == s.field);
  CHECK(back.period == s.period);
  CHECK(back.signal_period == s.signal_period);
  REQUIRE(back.points() == s.points());
  for (int k = 0; k < s.points(); ++k) CHECK(back.values[k] == s.values[k]);
  CHECK(coherence_csv(back) == text);
}

TEST_CASE("coherence CSV round-trip over random series") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const CoherenceSeries s = coherence_series({dim(rng), dim(rng)}, unit(rng), unit(rng), 3 * (1 + trial) + 1);
    const CoherenceSeries back = parse_coherence_csv(coherence_csv(s));
    CHECK(back.values == s.values);
    CHECK(back.beta == s.beta);
  }
}

TEST_CASE("the signal period line is optional") {
  CoherenceSeries s = coherence_series({2, 3}, 0.44, 0.1, 13);
  s.signal_period = 0.0;
  const std::string text = coherence_csv(s);
  CHECK(text.find("signal_period") == std::string::npos);
  CHECK(parse_coherence_csv(text).signal_period == 0.0);
}

TEST_CASE("malformed coherence CSV") {
  CHECK_THROWS_AS(parse_coherence_csv(""), UsageError);
  CHECK_THROWS_AS(parse_coherence_csv("u,re,im\n0,1,0\n"), UsageError);
  const std::string good = coherence_csv(coherence_series({2, 2}, 0.4, 0.3, 7));
  CHECK_THROWS_AS(parse_coherence_csv(good.substr(0, good.rfind('\n', good.size() - 2) + 1)), UsageError);
  std::string bad = good;
  bad.replace(bad.rfind(','), 1, ";");
  CHECK_THROWS_AS(parse_coherence_csv(bad), UsageError);
}

TEST_CASE("reconstruction JSON fields") {
  const CoherenceSeries s = coherence_series({2, 2}, 0.4, 0.3, 394);
  const FreeEnergyEstimate e = free_energy_from_series(s);
  const json j = json::parse(reconstruction_json(s, e));
  for (const char* key : {"N", "M", "beta", "h", "lambda_prime", "points", "period", "rule", "ratio_log_mag",
                          "ratio_phase", "residual_imag", "f_per_site"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["N"] == 2);
  CHECK(j["points"] == 394);
  CHECK(j["rule"] == "trapezoid");
  CHECK(j["lambda_prime"].get<double>() == 0.0);
  CHECK(j["f_per_site"].get<double>() == e.f_per_site);
}

TEST_CASE("fit JSON and CSVs") {
  std::vector<FreeEnergyPoint> pts;
  for (int n : {6, 7, 8}) {
    pts.push_back(FreeEnergyPoint::from_per_site({n, 50}, -0.93 - 0.26 / (n * n) + 1e-4 * n, FreeEnergyMethod::direct));
  }
  const CentralChargeFit fit = fit_central_charge_strip(pts);
  const json j = json::parse(fit_json(fit));
  for (const char* key : {"slope", "slope_stderr", "intercept", "c", "c_stderr", "points"}) CHECK(j.contains(key));
  REQUIRE(j["points"].size() == 3);
  CHECK(j["points"][0]["N"] == 6);
  CHECK(j["points"][0]["M"] == 50);
  CHECK(j["points"][0].contains("residual"));
  CHECK(j["c"].get<double>() == fit.c);

  const std::string csv = fit_points_csv(fit);
  CHECK(csv.rfind("N,M,f,residual,method\n", 0) == 0);
  CHECK(csv.find(",direct\n") != std::string::npos);

  const std::string elong = elongation_csv(elongation_curve(
      {FreeEnergyPoint::from_per_site({2, 8}, -1.0, FreeEnergyMethod::direct),
       FreeEnergyPoint::from_per_site({4, 4}, -0.9, FreeEnergyMethod::direct)}));
  CHECK(elong.rfind("x,ln_x,F_total,f_per_site,ln_abs_F_total,N,M\n", 0) == 0);
}

TEST_CASE("atomic write replaces the file and leaves no temporary") {
  const auto dir = std::filesystem::temp_directory_path() / "isingholo_report_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), {});
  CHECK(content == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  CHECK_THROWS_AS(write_file_atomic((dir / "missing" / "x.txt").string(), "x"), Error);
  std::filesystem::remove_all(dir);
}

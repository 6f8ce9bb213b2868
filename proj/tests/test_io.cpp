#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mest/dataset.hpp"
#include "mest/error.hpp"
#include "mest/montecarlo.hpp"
#include "mest/param_file.hpp"
#include "mest/report.hpp"
#include "support/oracles.hpp"

using namespace mest;
using Catch::Approx;

namespace {

PairedDataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset(in);
}

PopulationParams parse_p(const std::string& text) {
  std::istringstream in(text);
  return parse_params(in);
}

std::string field_error(const std::string& text) {
  try {
    parse_p(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parameter file", "[io]") {
  const PopulationParams p = parse_p(
      "# comment line\n"
      "mu_y = 127\nmu_x=170\n  sigma2_y = 1278  # trailing comment\n"
      "sigma2_x = 3300\n\nrho = 0.964\nsigma2_u = 36\nsigma2_v = 36.00\nn = 10\n");
  CHECK(p == oracle::table51());

  CHECK(parse_p(format_params(p)) == p);

  CHECK_THAT(field_error("mu_y = 1\n"), Catch::Matchers::ContainsSubstring("missing key 'mu_x'"));
  CHECK_THAT(field_error(format_params(p) + "mu_y = 3\n"), Catch::Matchers::ContainsSubstring("duplicate"));
  CHECK_THAT(field_error(format_params(p) + "mean = 3\n"), Catch::Matchers::ContainsSubstring("unknown key 'mean'"));
  CHECK_THAT(field_error("garbage\n"), Catch::Matchers::ContainsSubstring("key=value"));

  PopulationParams bad = p;
  bad.rho = 1.5;
  CHECK_THROWS_AS(parse_p(format_params(bad)), InvalidParameter);
  std::string s = format_params(p);
  s.replace(s.find("n = 10"), 6, "n = 10.5");
  CHECK_THROWS_AS(parse_p(s), FormatError);
  CHECK_THROWS_AS(load_params("/nonexistent/file.params"), FormatError);
}

TEST_CASE("dataset loading", "[io]") {
  const PairedDataset truth = parse("X,Y,x,y\n100,80,102,79\n120,95,118,97\n");
  CHECK(truth.has_truth);
  REQUIRE(truth.rows.size() == 2);
  CHECK(truth.rows[1].X == 120.0);
  CHECK(truth.rows[1].y == 97.0);

  const PairedDataset observed = parse("x,y\n1,2\n3,4\n");
  CHECK_FALSE(observed.has_truth);
  CHECK(observed.rows.size() == 2);
  CHECK_FALSE(observed.rows[0].X);

  CHECK_THROWS_AS(parse("a,b\n1,2\n"), FormatError);
  CHECK_THROWS_AS(parse("x,y\n1,2\n"), FormatError);
  CHECK_THROWS_AS(parse("x,y\n1,2\n3\n"), FormatError);
  try {
    parse("x,y\n1,2\n3,abc\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("row 3, column y"));
  }
  CHECK_THROWS_AS(parse("x,y\n1,2\n3,inf\n"), FormatError);
}

TEST_CASE("dataset round trip keeps every digit", "[io][property]") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0.0, 1e3);
  for (int trial = 0; trial < 50; ++trial) {
    PairedDataset d;
    d.has_truth = trial % 2 == 0;
    for (int i = 0; i < 25; ++i) {
      PairedDataset::Row r;
      if (d.has_truth) {
        r.X = z(rng);
        r.Y = z(rng) * 1e-7;
      }
      r.x = z(rng);
      r.y = z(rng) * 1e9;
      d.rows.push_back(r);
    }
    const PairedDataset back = parse(render_dataset(d));
    CHECK(back.has_truth == d.has_truth);
    CHECK(back.rows == d.rows);
  }
}

TEST_CASE("parameter estimation", "[io]") {
  const PairedDataset exact = parse("X,Y,x,y\n1,10,1,10\n2,12,2,12\n3,15,3,15\n4,15,4,15\n");
  const PopulationParams a = estimate_params(exact, VarianceDivisor::NMinus1);
  CHECK(a.sigma2_u == 0.0);
  CHECK(a.sigma2_v == 0.0);
  CHECK(a.sigma2_x == Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(a.mu_x == 2.5);
  CHECK(a.n == 4);
  const PopulationParams b = estimate_params(exact, VarianceDivisor::N);
  CHECK(b.sigma2_x == Approx(1.25).epsilon(1e-15));
  CHECK(b.rho == Approx(a.rho).epsilon(1e-14));

  CHECK_THROWS_AS(estimate_params(parse("x,y\n1,2\n3,4\n")), InvalidParameter);
}

TEST_CASE("parameter estimation recovers a simulated population", "[io][property]") {
  const PopulationParams truth = with_sample_size(oracle::table51(), 200000);
  PairedDataset d;
  d.has_truth = true;
  for (const UnitDraw& u : draw_units({truth}, 2024, 0)) d.rows.push_back({u.X, u.Y, u.x, u.y});
  const PopulationParams est = estimate_params(d);
  const double n = static_cast<double>(d.rows.size());

  // Standard errors under normality.
  CHECK(std::abs(est.mu_y - truth.mu_y) <= 3 * std::sqrt(truth.sigma2_y / n));
  CHECK(std::abs(est.mu_x - truth.mu_x) <= 3 * std::sqrt(truth.sigma2_x / n));
  CHECK(std::abs(est.sigma2_y - truth.sigma2_y) <= 3 * truth.sigma2_y * std::sqrt(2 / n));
  CHECK(std::abs(est.sigma2_x - truth.sigma2_x) <= 3 * truth.sigma2_x * std::sqrt(2 / n));
  CHECK(std::abs(est.sigma2_u - truth.sigma2_u) <= 3 * truth.sigma2_u * std::sqrt(2 / n));
  CHECK(std::abs(est.sigma2_v - truth.sigma2_v) <= 3 * truth.sigma2_v * std::sqrt(2 / n));
  CHECK(std::abs(est.rho - truth.rho) <= 3 * (1 - truth.rho * truth.rho) / std::sqrt(n));
}

TEST_CASE("csv report", "[io][report]") {
  const ReportTable t = build_report(oracle::table51());
  const std::string csv = render_report(t, ReportFormat::Csv);
  std::istringstream lines(csv);
  std::string header, mean, t1;
  std::getline(lines, header);
  std::getline(lines, mean);
  std::getline(lines, t1);
  CHECK(header == "estimator,mse_error_free,me_contribution,mse_total,pre");
  CHECK(mean == "mean,127.800,3.600,131.400,100.000");
  CHECK(t1.rfind("t1,16.181,5.609,21.79", 0) == 0);
  CHECK(render_report(t, ReportFormat::Csv) == csv);
}

TEST_CASE("json report mirrors the breakdown fields", "[io][report]") {
  const ReportTable t = build_report(oracle::table51());
  const auto j = nlohmann::json::parse(render_report(t, ReportFormat::Json));
  REQUIRE(j["rows"].size() == 6);
  CHECK(j["rows"][0]["estimator"] == "mean");
  CHECK(j["rows"][0]["pre"].get<double>() == 100.0);
  CHECK(j["rows"][3]["weights_used"]["w1"].get<double>() == Approx(0.99913785117677));
  CHECK(j["rows"][1]["weights_used"].is_null());
  CHECK(j["metadata"]["tp_mode"] == "corrected");
  CHECK(j["metadata"]["params"]["n"] == 10);
  CHECK(j["metadata"]["tp_errata"]["as_printed_min"].get<double>() == Approx(-87.9089120558));
}

TEST_CASE("text report", "[io][report]") {
  const ReportTable empty;
  const std::string header_only = render_report(empty, ReportFormat::Text);
  CHECK(header_only.find("estimator") == 0);
  CHECK(std::count(header_only.begin(), header_only.end(), '\n') == 1);

  const std::string text = render_report(build_report(oracle::table51()), ReportFormat::Text);
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("12.357"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("13.906"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("-87.909"));

  const std::string without_ref =
      render_report(build_report(oracle::table51(), TpMode::Corrected, std::nullopt), ReportFormat::Text);
  CHECK(without_ref.find("12.357") == std::string::npos);

  const std::string printed = render_report(build_report(oracle::table51(), TpMode::AsPrinted), ReportFormat::Text);
  CHECK_THAT(printed, Catch::Matchers::ContainsSubstring("not a valid minimum"));
}

#include <doctest.h>

#include <map>
#include <sstream>
#include <string>

#include "bernq/experiments.hpp"

namespace {

std::string csv(const bernq::ExperimentReport& r) {
  std::ostringstream out;
  r.write_csv(out, false);
  return out.str();
}

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("delta table defaults") {
  bernq::DeltaTableConfig config;
  config.z = {1.0};
  const auto report = bernq::cmd_delta_table(config);
  REQUIRE(report.rows.size() == 3u);
  const double expected[] = {0.53269, 0.53349, 0.53197};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(report.rows[i].value == doctest::Approx(expected[i]).epsilon(1e-4));
    CHECK(report.rows[i].p == 4);
  }
  const double table[] = {0.5327, 0.5328, 0.5319};
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(report.rows[i].value - table[i]) <= 5e-3);
}

TEST_CASE("delta table arguments") {
  bernq::DeltaTableConfig config;
  config.N = {};
  CHECK(bernq::cmd_delta_table(config).rows.empty());
  config.N = {64, 4096};
  config.K = 100;
  CHECK_THROWS_AS(bernq::cmd_delta_table(config), std::invalid_argument);
}

TEST_CASE("scalar error sweep") {
  bernq::ScalarErrorConfig config;
  config.points = 21;
  config.p = {2};
  config.ell = {0, 3};
  const auto report = bernq::cmd_scalar_error(config);
  std::map<std::pair<int, double>, double> worst;
  for (const auto& row : report.rows) {
    auto& w = worst[{*row.ell, *row.tau}];
    w = std::max(w, row.value);
  }
  CHECK(worst[{3, 0.125}] < worst[{0, 0.125}]);
  CHECK(worst[{3, 0.0078125}] < worst[{0, 0.0078125}]);
  // Near the endpoint the correction is less effective.
  CHECK(worst[{3, 0.0078125}] > worst[{3, 0.125}]);
  // w = 0 appears with z = 0.
  int zero_rows = 0;
  for (const auto& row : report.rows) {
    if (row.z && *row.z == 0.0) ++zero_rows;
  }
  CHECK(zero_rows == 4);
}

TEST_CASE("tau zero uses the shift identity") {
  bernq::ScalarErrorConfig config;
  config.points = 11;
  config.tau = {0.0};
  config.p = {4};
  config.ell = {2};
  const auto report = bernq::cmd_scalar_error(config);
  REQUIRE(report.rows.size() == 11u);
  for (const auto& row : report.rows) {
    CHECK(row.method == "G-shift");
    CHECK(row.value <= 1e-6);
  }
}

TEST_CASE("csv layout and determinism") {
  bernq::DeltaTableConfig config;
  config.N = {64, 128};
  config.K = 256;
  const auto a = bernq::cmd_delta_table(config);
  const std::string text = csv(a);
  CHECK(count(text, bernq::ExperimentReport::kHeader) == 1);
  CHECK(text.rfind(bernq::ExperimentReport::kHeader, 0) == 0);
  CHECK(text == csv(bernq::cmd_delta_table(config)));
  config.threads = 3;
  CHECK(text == csv(bernq::cmd_delta_table(config)));
  // No timing: every line ends with an empty elapsed field.
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) CHECK(line.back() == ',');
}

TEST_CASE("rows sort by key") {
  bernq::ExperimentReport r;
  bernq::ReportRow x, y, z;
  x.experiment = "b";
  y.experiment = "a";
  y.N = 20;
  z.experiment = "a";
  z.N = 10;
  r.rows = {x, y, z};
  r.sort();
  CHECK(r.rows[0].N == 10);
  CHECK(r.rows[1].N == 20);
  CHECK(r.rows[2].experiment == "b");
}

TEST_CASE("bvp and arnoldi commands") {
  bernq::BvpConfig bvp;
  bvp.s = 64;
  bvp.N = {40};
  bvp.n = {2};
  bvp.ell = {2};
  bvp.tau = {0.25};
  const auto report = bernq::cmd_bvp_compare(bvp);
  std::map<std::string, int> methods;
  for (const auto& row : report.rows) ++methods[row.method];
  CHECK(methods["Lanc"] == 1);
  CHECK(methods["Lanc-stable"] == 1);
  CHECK(methods["FastLanc"] == 1);
  bvp.tau = {1.0};
  CHECK_THROWS(bernq::cmd_bvp_compare(bvp));

  bernq::ArnoldiConfig arn;
  arn.s = 64;
  arn.steps = 10;
  const auto ar = bernq::cmd_arnoldi_compare(arn);
  int arnoldi_rows = 0;
  for (const auto& row : ar.rows) arnoldi_rows += row.method == "arnoldi";
  CHECK(arnoldi_rows == 10);
  arn.test = 5;
  CHECK_THROWS_AS(bernq::cmd_arnoldi_compare(arn), std::invalid_argument);
}

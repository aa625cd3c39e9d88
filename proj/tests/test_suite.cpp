#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "gtomo/suite.hpp"

using namespace gtomo;

TEST_CASE("body specs parse and construct") {
  auto b = suite::parse_body_spec(R"({"family":"ellipsoid","dim":3,"params":[1.2,1.0,0.8]})");
  CHECK(b.family == "ellipsoid");
  CHECK(b.dim == 3);
  auto E = suite::construct_body(b);
  CHECK(E.dim == 3);
  CHECK(E.smooth);

  auto z = suite::parse_body_spec(
      R"({"family":"zonotope","dim":2,"generators":[[1,0],[0,1],[1,1]]})");
  auto Z = suite::construct_body(z);
  CHECK(*bodies::analytic_volume(Z) == doctest::Approx(12.0));

  CHECK_THROWS(suite::parse_body_spec(R"({"family":"moebius","dim":3})"));
  CHECK_THROWS(suite::parse_body_spec(R"({"family":"ellipsoid","dim":3,"params":[1,-2,1]})"));
  CHECK_THROWS(suite::parse_body_spec("not json"));
  CHECK_THROWS(suite::parse_body_spec(R"({"family":"ball","dim":9})"));
}

TEST_CASE("config validation gates suites, dimensions and alpha") {
  suite::SuiteConfig cfg;
  cfg.suite = "bp-stability";
  cfg.dim = 3;
  CHECK_NOTHROW(suite::validate(cfg));

  cfg.suite = "no-such-suite";
  CHECK_THROWS(suite::validate(cfg));

  cfg.suite = "corollary-n4";
  cfg.dim = 5;
  CHECK_THROWS(suite::validate(cfg));
  cfg.dim = 4;
  CHECK_NOTHROW(suite::validate(cfg));

  cfg.suite = "frac-section";
  cfg.dim = 4;
  CHECK_THROWS(suite::validate(cfg));  // alpha required
  cfg.alpha = 1.0;
  CHECK_NOTHROW(suite::validate(cfg));
  cfg.alpha = 3.5;
  CHECK_THROWS(suite::validate(cfg));  // out of [n-4, n-1)

  cfg.suite = "frac-projection";
  cfg.alpha = 4.25;
  CHECK_NOTHROW(suite::validate(cfg));
  cfg.alpha = 2.0;
  CHECK_THROWS(suite::validate(cfg));  // below n is rejected

  cfg.suite = "bp-stability";
  cfg.alpha = std::numeric_limits<double>::quiet_NaN();
  cfg.format = "yaml";
  CHECK_THROWS(suite::validate(cfg));
  cfg.format = "csv";
  CHECK_NOTHROW(suite::validate(cfg));
}

TEST_CASE("seeded pair generation is deterministic and suite-appropriate") {
  suite::SuiteConfig cfg;
  cfg.suite = "bp-separation";
  cfg.dim = 3;
  cfg.seed = 99;
  auto a = suite::random_pairs(cfg, 4);
  auto b = suite::random_pairs(cfg, 4);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a[i].first.family == b[i].first.family);
    CHECK(a[i].first.params == b[i].first.params);
    CHECK(a[i].second.params == b[i].second.params);
  }
  cfg.seed = 100;
  auto c = suite::random_pairs(cfg, 4);
  bool differs = false;
  for (std::size_t i = 0; i < 4; ++i) differs |= (a[i].first.params != c[i].first.params);
  CHECK(differs);
}

TEST_CASE("suite runs produce one passing report per pair") {
  suite::SuiteConfig cfg;
  cfg.suite = "bp-stability";
  cfg.dim = 3;
  auto pairs = suite::random_pairs(cfg, 3);
  auto reports = suite::run_suite(cfg, pairs);
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.pass);
    CHECK(r.theorem == "section-stability");
    CHECK(r.bodies.size() == 2);
  }
}

TEST_CASE("identity suite covers transforms and pairings") {
  suite::SuiteConfig cfg;
  cfg.suite = "identities";
  cfg.dim = 3;
  auto pairs = suite::random_pairs(cfg, 1);
  auto reports = suite::run_suite(cfg, pairs);
  REQUIRE(reports.size() >= 3);
  for (const auto& r : reports) CHECK(r.pass);
}

TEST_CASE("a broken pair yields a failed report, not a crash") {
  suite::SuiteConfig cfg;
  cfg.suite = "shephard";
  cfg.dim = 3;
  suite::BodySpec ok{"ball", 3, {1.0}, {}, "ball"};
  suite::BodySpec bad{"ball", 4, {1.0}, {}, "ball4"};  // dimension mismatch
  auto reports = suite::run_suite(cfg, {{ok, bad}});
  REQUIRE(reports.size() == 1);
  CHECK_FALSE(reports[0].pass);
  REQUIRE_FALSE(reports[0].flags.empty());
}

TEST_CASE("canonical rounding keeps twelve significant digits") {
  CHECK(suite::canonical(0.0) == 0.0);
  CHECK(suite::canonical(1.0 / 3.0) == 0.333333333333);
  CHECK(suite::canonical(-1234567.89123456) == -1234567.89123);
  CHECK(suite::canonical(suite::canonical(M_PI)) == suite::canonical(M_PI));
}

TEST_CASE("JSON and CSV carry field-identical values") {
  suite::SuiteConfig cfg;
  cfg.suite = "bp-stability";
  cfg.dim = 3;
  auto reports = suite::run_suite(cfg, suite::random_pairs(cfg, 2));

  auto doc = nlohmann::json::parse(suite::to_json(reports));
  CHECK(doc.at("schema_version") == 1);
  REQUIRE(doc.at("reports").size() == 2);

  std::istringstream csv(suite::to_csv(reports));
  std::string header, line;
  REQUIRE(std::getline(csv, header));
  CHECK(header.find("margin") != std::string::npos);
  int row = 0;
  while (std::getline(csv, line)) {
    const auto& jr = doc.at("reports").at(row);
    const double jmargin = jr.at("margin").get<double>();
    std::ostringstream expect;
    expect << std::setprecision(17) << jmargin;
    // the CSV row must contain exactly the JSON value of the margin field
    CHECK(line.find(nlohmann::json(jmargin).dump()) != std::string::npos);
    ++row;
  }
  CHECK(row == 2);
}

TEST_CASE("two runs with one config serialize byte-identically") {
  suite::SuiteConfig cfg;
  cfg.suite = "shephard-sep";
  cfg.dim = 3;
  cfg.seed = 2024;
  auto p1 = suite::random_pairs(cfg, 3);
  auto p2 = suite::random_pairs(cfg, 3);
  CHECK(suite::to_json(suite::run_suite(cfg, p1)) ==
        suite::to_json(suite::run_suite(cfg, p2)));
}

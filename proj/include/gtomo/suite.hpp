#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gtomo/bodies.hpp"
#include "gtomo/report.hpp"

namespace gtomo::suite {

/// Declarative body description, parsed from JSON.
struct BodySpec {
  std::string family;
  int dim = 0;
  std::vector<double> params;
  std::vector<std::vector<double>> vectors;  // zonotope generators / vertices
  std::string label;
};

BodySpec parse_body_spec(const std::string& json_text);
bodies::Body construct_body(const BodySpec& spec);

struct SuiteConfig {
  std::string suite;
  int dim = 3;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  int lmax = 16;
  int resolution = 0;  // 0 = per-dimension default
  double tol = 1e-6;
  unsigned seed = 12345;
  std::string out;
  std::string format = "json";
};

const std::vector<std::string>& suite_names();

/// Throws on unknown suite ids and on alpha missing/out of range.
void validate(const SuiteConfig& cfg);

/// Seeded generator of body pairs suitable for the given suite (smooth
/// convex families; separation suites get strictly nested pairs).
std::vector<std::pair<BodySpec, BodySpec>> random_pairs(const SuiteConfig& cfg, int count);

/// One report per pair (several for the identities suite); report order
/// follows input order, per-pair errors are recorded as failed reports.
std::vector<VerifierReport> run_suite(const SuiteConfig& cfg,
                                      const std::vector<std::pair<BodySpec, BodySpec>>& pairs);

/// Canonical 12-significant-digit rounding applied to every numeric report
/// field before serialization, so JSON and CSV carry identical values.
double canonical(double x);

std::string to_json(const std::vector<VerifierReport>& reports);
std::string to_csv(const std::vector<VerifierReport>& reports);

/// Writes reports to path ("-" = stdout) in the requested format.
void emit_report(const std::vector<VerifierReport>& reports, const std::string& path,
                 const std::string& format);

}  // namespace gtomo::suite

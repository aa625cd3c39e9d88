#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtomo/suite.hpp"

using gtomo::suite::BodySpec;
using gtomo::suite::SuiteConfig;

namespace {

std::vector<std::pair<BodySpec, BodySpec>> load_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bodies file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buf.str());
  if (doc.is_object() && doc.contains("pairs")) doc = doc.at("pairs");
  if (!doc.is_array()) throw std::runtime_error("bodies file: expected an array of [K, L] pairs");
  std::vector<std::pair<BodySpec, BodySpec>> pairs;
  for (const auto& item : doc) {
    if (!item.is_array() || item.size() != 2)
      throw std::runtime_error("bodies file: each entry must be a [K, L] pair");
    pairs.emplace_back(gtomo::suite::parse_body_spec(item[0].dump()),
                       gtomo::suite::parse_body_spec(item[1].dump()));
  }
  return pairs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability and separation checks for section/projection volume comparisons"};

  SuiteConfig cfg;
  std::string bodies_file;
  int npairs = 5;

  std::string suites;
  for (const auto& s : gtomo::suite::suite_names()) suites += (suites.empty() ? "" : ", ") + s;

  app.add_option("--suite", cfg.suite, "Suite id: " + suites)->required();
  app.add_option("--dim", cfg.dim, "Ambient dimension, 2..6")->default_val(3);
  app.add_option("--alpha", cfg.alpha, "Fractional order (frac-* suites only)");
  app.add_option("--lmax", cfg.lmax, "Harmonic truncation degree")->default_val(16);
  app.add_option("--resolution", cfg.resolution, "Grid resolution (0 = per-dimension default)")
      ->default_val(0);
  app.add_option("--tol", cfg.tol, "Verdict tolerance scale")->default_val(1e-6);
  app.add_option("--seed", cfg.seed, "Seed for generated body pairs")->default_val(12345u);
  app.add_option("--bodies", bodies_file, "JSON file with [K, L] body-spec pairs");
  app.add_option("--pairs", npairs, "Number of generated pairs when --bodies is absent")
      ->default_val(5);
  app.add_option("--out", cfg.out, "Output path (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->default_val("json");

  CLI11_PARSE(app, argc, argv);

  try {
    gtomo::suite::validate(cfg);
    const auto pairs = bodies_file.empty() ? gtomo::suite::random_pairs(cfg, npairs)
                                           : load_pairs(bodies_file);
    const auto reports = gtomo::suite::run_suite(cfg, pairs);
    gtomo::suite::emit_report(reports, cfg.out, cfg.format);
    for (const auto& r : reports)
      if (!r.pass) return 1;
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

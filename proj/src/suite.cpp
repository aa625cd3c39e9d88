#include "gtomo/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gtomo/sections.hpp"
#include "gtomo/shadows.hpp"
#include "gtomo/specfun.hpp"
#include "gtomo/spectral.hpp"

namespace gtomo::suite {

namespace {

using nlohmann::json;

const std::vector<std::string> kSuites = {
    "bp-stability",  "bp-separation",   "corollary-n4",
    "frac-section",  "frac-section-sep", "shephard",
    "shephard-sep",  "frac-projection", "identities"};

bool needs_alpha(const std::string& s) {
  return s == "frac-section" || s == "frac-section-sep" || s == "frac-projection";
}

RunConfig run_config(const SuiteConfig& cfg) {
  RunConfig rc;
  rc.resolution = cfg.resolution;
  rc.lmax = cfg.lmax;
  rc.alpha = cfg.alpha;
  rc.seed = cfg.seed;
  return rc;
}

VerifierReport identity_report(const std::string& name, const bodies::Body& K,
                               const bodies::Body& L, double defect, double tolerance,
                               const SuiteConfig& cfg) {
  VerifierReport r;
  r.theorem = name;
  r.bodies = {K.label, L.label};
  r.lhs = defect;
  r.rhs = tolerance;
  r.epsilon = defect;
  r.resolution = cfg.resolution;
  r.lmax = cfg.lmax;
  finalize(r);
  return r;
}

std::vector<VerifierReport> run_identities(const bodies::Body& K, const bodies::Body& L,
                                           const SuiteConfig& cfg) {
  const int n = K.dim;
  auto grid = sphere::make_grid(n, cfg.resolution);
  std::vector<VerifierReport> out;

  {  // Gamma ratio bounds for this dimension
    VerifierReport r;
    r.theorem = "identity-gamma-ratios";
    r.bodies = {K.label, L.label};
    r.rhs = 1.0;
    r.lhs = specfun::lemma1_check(n).pass() ? 1.0 : 0.0;
    finalize(r);
    r.pass = r.pass && r.lhs == 1.0;
    out.push_back(r);
  }

  out.push_back(identity_report(
      "identity-parseval-sections", K, L,
      spectral::parseval_check(K, L, 0.5 * n, grid, cfg.lmax), 1e-3, cfg));

  {  // spectral vs direct section transform, sampled sup norm
    double worst = 0;
    for (const bodies::Body* B : {&K, &L}) {
      auto s = sections::section_function(*B, grid, cfg.lmax);
      const std::size_t stride = std::max<std::size_t>(1, grid->size() / 48);
      for (std::size_t i = 0; i < grid->size(); i += stride)
        worst = std::max(worst, std::abs(s[i] - sections::section_function_direct(
                                                    *B, grid->node(i), cfg.resolution)));
    }
    out.push_back(identity_report("identity-radon-routes", K, L, worst, 1e-3, cfg));
  }

  if (K.has_curvature() && L.has_curvature()) {
    // Parseval on the projection side: transform of h_K against transform of
    // f_L matches (2pi)^n times the plain pairing
    auto h = sphere::sample(grid, K.support);
    auto f = sphere::sample(grid, L.curvature);
    auto A = sphere::apply_multiplier(h, spectral::ft_multipliers(n, -1.0, cfg.lmax));
    auto B = sphere::apply_multiplier(f, spectral::ft_multipliers(n, n + 1.0, cfg.lmax));
    double lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      lhs += grid->weights[i] * A[i] * B[i];
      rhs += grid->weights[i] * h[i] * f[i];
    }
    rhs *= std::pow(2.0 * 3.14159265358979323846, n);
    out.push_back(identity_report("identity-parseval-projections", K, L,
                                  std::abs(lhs - rhs) / std::abs(rhs), 1e-3, cfg));
  }
  return out;
}

}  // namespace

BodySpec parse_body_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("body spec: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("body spec: expected a JSON object");
  BodySpec spec;
  spec.family = j.value("family", "");
  spec.dim = j.value("dim", 0);
  if (j.contains("params")) spec.params = j.at("params").get<std::vector<double>>();
  for (const char* key : {"generators", "vertices"})
    if (j.contains(key)) spec.vectors = j.at(key).get<std::vector<std::vector<double>>>();
  spec.label = j.value("label", "");
  construct_body(spec);  // validate eagerly so errors carry context
  return spec;
}

bodies::Body construct_body(const BodySpec& spec) {
  const int n = spec.dim;
  bodies::Body b;
  if (spec.family == "ball")
    b = bodies::make_ball(n, spec.params.empty() ? 1.0 : spec.params[0]);
  else if (spec.family == "ellipsoid")
    b = bodies::make_ellipsoid(spec.params);
  else if (spec.family == "lp_ball") {
    if (spec.params.empty()) throw std::invalid_argument("lp_ball: params = [p]");
    b = bodies::make_lp_ball(n, spec.params[0]);
  } else if (spec.family == "perturbed_ball") {
    if (spec.params.empty()) throw std::invalid_argument("perturbed_ball: params = [delta, degree?, axis?]");
    const double delta = spec.params[0];
    const int degree = spec.params.size() > 1 ? int(spec.params[1]) : 2;
    const int axis = spec.params.size() > 2 ? int(spec.params[2]) : -1;
    b = bodies::make_perturbed_ball(n, delta, degree, axis);
  } else if (spec.family == "cube")
    b = bodies::make_cube(n, spec.params.empty() ? 1.0 : spec.params[0]);
  else if (spec.family == "zonotope")
    b = bodies::make_zonotope(n, spec.vectors);
  else if (spec.family == "polytope")
    b = bodies::make_polytope_vertices(n, spec.vectors);
  else
    throw std::invalid_argument(
        "unknown family '" + spec.family +
        "'; supported: ball, ellipsoid, lp_ball, perturbed_ball, cube, zonotope, polytope");
  if (!spec.label.empty()) b.label = spec.label;
  return b;
}

const std::vector<std::string>& suite_names() { return kSuites; }

void validate(const SuiteConfig& cfg) {
  if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end()) {
    std::string all;
    for (const auto& s : kSuites) all += (all.empty() ? "" : ", ") + s;
    throw std::invalid_argument("unknown suite '" + cfg.suite + "'; expected one of: " + all);
  }
  if (cfg.dim < 2 || cfg.dim > 6) throw std::invalid_argument("dim must be in [2,6]");
  if (cfg.format != "json" && cfg.format != "csv")
    throw std::invalid_argument("format must be json or csv");
  if (cfg.suite == "corollary-n4" && cfg.dim > 4)
    throw std::invalid_argument("corollary-n4 requires dim <= 4");
  const bool has_alpha = !std::isnan(cfg.alpha);
  if (!needs_alpha(cfg.suite)) {
    if (has_alpha)
      throw std::invalid_argument("suite '" + cfg.suite + "' does not take --alpha");
    return;
  }
  if (!has_alpha) throw std::invalid_argument("suite '" + cfg.suite + "' requires --alpha");
  const int n = cfg.dim;
  if (cfg.suite == "frac-projection") {
    if (cfg.alpha < n || cfg.alpha >= n + 1)
      throw std::invalid_argument("frac-projection: alpha must lie in [dim, dim+1)");
  } else {
    if (n < 4) throw std::invalid_argument(cfg.suite + " requires dim >= 4");
    if (cfg.alpha < n - 4 || cfg.alpha >= n - 1)
      throw std::invalid_argument(cfg.suite + ": alpha must lie in [dim-4, dim-1)");
  }
}

std::vector<std::pair<BodySpec, BodySpec>> random_pairs(const SuiteConfig& cfg, int count) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int n = cfg.dim;
  const bool separation = cfg.suite == "bp-separation" || cfg.suite == "frac-section-sep" ||
                          cfg.suite == "shephard-sep";
  const bool needs_density = cfg.suite == "frac-projection";
  const bool ball_rhs = cfg.suite == "shephard";

  auto smooth_spec = [&](double lo, double hi) {
    BodySpec s;
    s.dim = n;
    if (!needs_density && uni(rng) < 0.5) {
      s.family = "perturbed_ball";
      const double scale_hint = 0.5 * (lo + hi);
      double delta = (uni(rng) - 0.5) * 0.25;
      s.params = {delta, uni(rng) < 0.5 ? 2.0 : 4.0};
      s.label = "perturbed_ball(" + std::to_string(delta) + ")";
      (void)scale_hint;  // perturbed balls are unit-scale by construction
    } else {
      s.family = "ellipsoid";
      for (int i = 0; i < n; ++i) s.params.push_back(lo + (hi - lo) * uni(rng));
      s.label = "ellipsoid";
    }
    return s;
  };
  auto ball_spec = [&](double r) {
    BodySpec s;
    s.dim = n;
    s.family = "ball";
    s.params = {r};
    s.label = "ball(" + std::to_string(r) + ")";
    return s;
  };

  std::vector<std::pair<BodySpec, BodySpec>> out;
  for (int i = 0; i < count; ++i) {
    if (separation) {
      // strictly nested: small ellipsoid inside a comfortably larger ball
      BodySpec K;
      K.dim = n;
      K.family = "ellipsoid";
      for (int c = 0; c < n; ++c) K.params.push_back(0.6 + 0.2 * uni(rng));
      K.label = "ellipsoid-inner";
      out.emplace_back(K, ball_spec(1.1 + 0.1 * uni(rng)));
    } else if (ball_rhs) {
      out.emplace_back(smooth_spec(0.85, 1.1), ball_spec(1.0 + 0.2 * uni(rng)));
    } else {
      out.emplace_back(smooth_spec(0.85, 1.15), smooth_spec(0.85, 1.15));
    }
  }
  return out;
}

std::vector<VerifierReport> run_suite(const SuiteConfig& cfg,
                                      const std::vector<std::pair<BodySpec, BodySpec>>& pairs) {
  validate(cfg);
  if (pairs.empty()) throw std::invalid_argument("run_suite: at least one body pair required");
  const RunConfig rc = run_config(cfg);
  std::vector<VerifierReport> out;
  for (const auto& [ks, ls] : pairs) {
    try {
      const bodies::Body K = construct_body(ks);
      const bodies::Body L = construct_body(ls);
      if (cfg.suite == "bp-stability")
        out.push_back(sections::verify_bp_stability(K, L, rc));
      else if (cfg.suite == "bp-separation")
        out.push_back(sections::verify_bp_separation(K, L, rc));
      else if (cfg.suite == "corollary-n4")
        out.push_back(sections::verify_corollary_n4(K, L, rc));
      else if (cfg.suite == "frac-section")
        out.push_back(spectral::verify_frac_section_stability(K, L, cfg.alpha, rc));
      else if (cfg.suite == "frac-section-sep")
        out.push_back(spectral::verify_frac_section_separation(K, L, cfg.alpha, rc));
      else if (cfg.suite == "shephard")
        out.push_back(shadows::verify_shephard_stability(K, L, rc));
      else if (cfg.suite == "shephard-sep")
        out.push_back(shadows::verify_shephard_separation(K, L, rc));
      else if (cfg.suite == "frac-projection")
        out.push_back(spectral::verify_frac_projection_stability(K, L, cfg.alpha, rc));
      else {
        auto ids = run_identities(K, L, cfg);
        out.insert(out.end(), ids.begin(), ids.end());
      }
    } catch (const std::exception& e) {
      VerifierReport r;
      r.theorem = cfg.suite;
      r.bodies = {ks.label.empty() ? ks.family : ks.label,
                  ls.label.empty() ? ls.family : ls.label};
      r.hypothesis_met = false;
      r.pass = false;
      r.flags.push_back(std::string("error: ") + e.what());
      out.push_back(r);
    }
  }
  return out;
}

double canonical(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

json report_to_json(const VerifierReport& r) {
  json j;
  j["theorem"] = r.theorem;
  j["bodies"] = r.bodies;
  j["epsilon"] = canonical(r.epsilon);
  j["lhs"] = canonical(r.lhs);
  j["rhs"] = canonical(r.rhs);
  j["constant"] = canonical(r.constant);
  j["margin"] = canonical(r.margin);
  j["tol"] = canonical(r.tol);
  j["pass"] = r.pass;
  j["hypothesis_met"] = r.hypothesis_met;
  j["flags"] = r.flags;
  j["resolution"] = r.resolution;
  j["lmax"] = r.lmax;
  if (std::isnan(r.alpha))
    j["alpha"] = nullptr;
  else
    j["alpha"] = canonical(r.alpha);
  return j;
}

std::string num(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", canonical(x));
  return buf;
}

}  // namespace

std::string to_json(const std::vector<VerifierReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("emit_report: empty report list");
  json doc;
  doc["schema_version"] = 1;
  doc["reports"] = json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_to_json(r));
  return doc.dump(2) + "\n";
}

std::string to_csv(const std::vector<VerifierReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("emit_report: empty report list");
  std::ostringstream os;
  os << "schema_version,theorem,body_k,body_l,epsilon,lhs,rhs,constant,margin,tol,"
        "pass,hypothesis_met,flags,resolution,lmax,alpha\n";
  for (const auto& r : reports) {
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : "; ") + f;
    os << 1 << ',' << r.theorem << ',' << (r.bodies.size() > 0 ? r.bodies[0] : "") << ','
       << (r.bodies.size() > 1 ? r.bodies[1] : "") << ',' << num(r.epsilon) << ','
       << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.constant) << ','
       << num(r.margin) << ',' << num(r.tol) << ',' << (r.pass ? "true" : "false") << ','
       << (r.hypothesis_met ? "true" : "false") << ',' << '"' << flags << '"' << ','
       << r.resolution << ',' << r.lmax << ',' << num(r.alpha) << '\n';
  }
  return os.str();
}

void emit_report(const std::vector<VerifierReport>& reports, const std::string& path,
                 const std::string& format) {
  const std::string text = format == "csv" ? to_csv(reports) : to_json(reports);
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace gtomo::suite

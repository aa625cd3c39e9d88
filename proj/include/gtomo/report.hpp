#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace gtomo {

/// Shared knobs for the verification pipelines.
struct RunConfig {
  int resolution = 0;  // 0 = per-dimension default
  int lmax = 16;       // truncation degree for spectral routes
  double alpha = std::numeric_limits<double>::quiet_NaN();
  unsigned seed = 12345;
};

/// Certification outcome for class-membership tests.
enum class Verdict { certified, certified_not, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::certified_not: return "certified-not";
    default: return "inconclusive";
  }
}

/// Outcome of one inequality check. margin = rhs - lhs; the check passes when
/// the hypotheses hold and margin >= -tol with tol = 1e-6 * max(1, |rhs|).
struct VerifierReport {
  std::string theorem;
  std::vector<std::string> bodies;
  double epsilon = 0;  // tightest valid slack found on the grid
  double lhs = 0;
  double rhs = 0;
  double constant = 0;  // stability/separation constant in front of epsilon
  double margin = 0;
  double tol = 0;
  bool pass = false;
  bool hypothesis_met = true;
  std::vector<std::string> flags;
  int resolution = 0;
  int lmax = 0;
  double alpha = std::numeric_limits<double>::quiet_NaN();
};

inline void finalize(VerifierReport& r) {
  r.margin = r.rhs - r.lhs;
  r.tol = 1e-6 * std::max(1.0, std::abs(r.rhs));
  r.pass = r.hypothesis_met && r.margin >= -r.tol;
}

}  // namespace gtomo

#include "gtomo/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace gtomo::specfun {

namespace {

// Lanczos g = 7, 9-term coefficient set.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kPi = 3.14159265358979323846;

double lanczos_ln(double x) {
  // valid for x >= 0.5
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i - 1);
  const double base = x + 6.5;
  return kLogSqrt2Pi + (x - 0.5) * std::log(base) - base + std::log(a);
}

bool near_nonpositive_integer(double x, double tol = 1e-13) {
  if (x > 0.5) return false;
  return std::abs(x - std::round(x)) < tol;
}

}  // namespace

double gamma_ln(double x) {
  if (!(x > 0)) throw std::domain_error("gamma_ln: requires x > 0");
  if (x >= 0.5) return lanczos_ln(x);
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  return std::log(kPi / std::sin(kPi * x)) - lanczos_ln(1.0 - x);
}

double rgamma(double x) {
  if (x > 0) return std::exp(-gamma_ln(x));
  if (near_nonpositive_integer(x)) return 0.0;
  // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  return std::sin(kPi * x) * std::exp(gamma_ln(1.0 - x)) / kPi;
}

double gamma_signed(double x) {
  if (x > 0) return std::exp(gamma_ln(x));
  if (near_nonpositive_integer(x))
    throw std::domain_error("gamma_signed: pole at non-positive integer");
  return kPi / (std::sin(kPi * x) * std::exp(gamma_ln(1.0 - x)));
}

double gegenbauer(int k, double nu, double t) {
  if (k < 0 || k > 64) throw std::domain_error("gegenbauer: degree out of [0,64]");
  if (!(nu > 0)) throw std::domain_error("gegenbauer: requires nu > 0");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * nu * t;
  for (int j = 2; j <= k; ++j) {
    const double next = (2.0 * (j + nu - 1.0) * t * cur - (j + 2.0 * nu - 2.0) * prev) / j;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gegenbauer_ratio(int k, double nu, double t) {
  if (k < 0 || k > 64) throw std::domain_error("gegenbauer_ratio: degree out of [0,64]");
  if (k == 0) return 1.0;
  if (nu == 0.0) {
    // Chebyshev T_k by the same recurrence
    double prev = 1.0, cur = t;
    for (int j = 2; j <= k; ++j) {
      const double next = 2.0 * t * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  // C_k^{nu}(1) = Gamma(k + 2 nu) / (Gamma(2 nu) k!)
  const double log_at_one =
      gamma_ln(k + 2.0 * nu) - gamma_ln(2.0 * nu) - gamma_ln(k + 1.0);
  return gegenbauer(k, nu, t) * std::exp(-log_at_one);
}

double sphere_surface_area(int n) {
  if (n < 1) throw std::domain_error("sphere_surface_area: requires n >= 1");
  return 2.0 * std::exp(0.5 * n * std::log(kPi) - gamma_ln(0.5 * n));
}

double harmonic_dimension(int n, int k) {
  if (k == 0) return 1.0;
  if (n == 2) return 2.0;
  // (2k + n - 2) / k * binom(k + n - 3, k - 1)
  const double binom = std::exp(gamma_ln(k + n - 2.0) - gamma_ln(double(k)) -
                                gamma_ln(n - 1.0));
  return (2.0 * k + n - 2.0) / k * binom;
}

Lemma1Result lemma1_check(int n) {
  if (n < 1) throw std::domain_error("lemma1_check: requires n >= 1");
  const double frac = double(n - 1) / n;
  Lemma1Result res;
  res.ratios.n = n;
  res.ratios.ratio1 =
      std::exp(frac * gamma_ln(0.5 * n + 1.0) - gamma_ln(0.5 * (n + 1)));
  res.ratios.ratio3 =
      std::exp(gamma_ln(0.5 * n + 1.0) - gamma_ln(0.5 * (n + 1)));
  if (n >= 2) {
    res.ratios.ratio2 =
        std::exp(gamma_ln(0.5 * (n - 1)) - frac * gamma_ln(0.5 * n));
  } else {
    res.ratios.ratio2 = std::nan("");
  }

  const double slack = 1e-12;
  res.ok1 = res.ratios.ratio1 >= 1.0 - slack &&
            res.ratios.ratio1 <= std::sqrt(std::exp(1.0)) * (1.0 + slack);
  if (n >= 2) {
    const double bound2 =
        std::exp(frac * std::log(double(n)) + std::log(2.0) / n) / (n - 1);
    res.ok2 = res.ratios.ratio2 <= bound2 * (1.0 + slack);
  } else {
    res.ok2 = true;  // not applicable for n = 1
  }
  res.ok3 = res.ratios.ratio3 >= std::sqrt(0.5 * n) * (1.0 - slack) &&
            res.ratios.ratio3 <= std::sqrt(0.5 * (n + 1)) * (1.0 + slack);
  return res;
}

}  // namespace gtomo::specfun

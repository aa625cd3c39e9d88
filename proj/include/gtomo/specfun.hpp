#pragma once

namespace gtomo::specfun {

/// log Gamma(x) for x > 0 (Lanczos approximation, relative accuracy ~1e-13).
/// Throws std::domain_error for x <= 0.
double gamma_ln(double x);

/// 1/Gamma(x) for any real x; returns 0 at the poles x = 0, -1, -2, ...
double rgamma(double x);

/// Gamma(x) for any real x that is not a pole (reflection formula for x < 0).
/// Throws std::domain_error at non-positive integers.
double gamma_signed(double x);

/// Gegenbauer polynomial C_k^{(nu)}(t) by forward recurrence, nu > 0.
/// Degrees capped at 64.
double gegenbauer(int k, double nu, double t);

/// Normalized zonal kernel C_k^{(nu)}(t) / C_k^{(nu)}(1).
/// nu == 0 (circle case) degenerates to the Chebyshev polynomial T_k(t).
double gegenbauer_ratio(int k, double nu, double t);

/// Surface area of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_surface_area(int n);

/// Dimension of the space of spherical harmonics of degree k on S^{n-1}.
double harmonic_dimension(int n, int k);

// The three Gamma ratios bounded by the log-convexity lemma.
// ratio2 is NaN for n = 1 (Gamma(0) pole); its bound applies only for n >= 2.
struct GammaRatios {
  int n = 0;
  double ratio1 = 0;  // Gamma(n/2+1)^{(n-1)/n} / Gamma((n+1)/2)
  double ratio2 = 0;  // Gamma((n-1)/2) / Gamma(n/2)^{(n-1)/n}
  double ratio3 = 0;  // Gamma(n/2+1) / Gamma((n+1)/2)
};

struct Lemma1Result {
  GammaRatios ratios;
  bool ok1 = false, ok2 = false, ok3 = false;
  bool pass() const { return ok1 && ok2 && ok3; }
};

/// Checks 1 <= ratio1 <= sqrt(e); ratio2 <= n^{(n-1)/n} 2^{1/n} / (n-1)
/// (n >= 2 only); sqrt(n/2) <= ratio3 <= sqrt((n+1)/2).
Lemma1Result lemma1_check(int n);

}  // namespace gtomo::specfun

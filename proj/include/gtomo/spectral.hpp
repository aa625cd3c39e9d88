#pragma once

#include <memory>

#include "gtomo/bodies.hpp"
#include "gtomo/report.hpp"
#include "gtomo/sphere.hpp"

namespace gtomo::spectral {

/// Multiplier m_k(p) of the Fourier transform on degree -p homogeneous
/// extensions: (Y_k(x/|x|)|x|^{-p})^ = m_k(p) Y_k(xi/|xi|)|xi|^{-n+p}.
/// Poles of the denominator Gamma give 0; poles of the numerator (p >= n+k
/// with matching parity) are outside the continuation range and throw.
double ft_multiplier(int n, double p, int k);

sphere::MultiplierSequence ft_multipliers(int n, double p, int lmax);

/// f(x) = |x|^degree * base(x/|x|), base even.
struct HomogeneousExtension {
  sphere::SphericalFunction base;
  double degree = 0;
};

/// Restriction of the Fourier transform of the extension to the sphere.
sphere::SphericalFunction ft_homogeneous(const HomogeneousExtension& ext, int lmax = 16);

/// (-Delta)^{alpha/2} of the section function, alpha in [n-4, n-1), n >= 4.
sphere::SphericalFunction frac_laplacian_section(const bodies::Body& K, double alpha,
                                                 std::shared_ptr<const sphere::SphereGrid> grid,
                                                 int lmax = 16);

/// (-Delta)^{alpha/2} of the projection function (degree-1 extension),
/// alpha in [n, n+1), n >= 3; smooth families with curvature data only.
sphere::SphericalFunction frac_laplacian_projection(const bodies::Body& L, double alpha,
                                                    std::shared_ptr<const sphere::SphereGrid> grid,
                                                    int lmax = 16);

struct PosDefReport {
  double min_value = 0;
  double sup = 0;
  double tol = 0;          // 1e-4 * sup
  bool in_lemma_range = false;  // convex body, alpha in [n-4, n-1)
  bool pass = false;       // vacuous outside the lemma range
};

/// Sign check of the transform of the |x|^{-alpha}-weighted radial extension.
PosDefReport posdef_check(const bodies::Body& K, double alpha, int lmax = 16,
                          int resolution = 0);

/// Relative defect of the spherical Parseval identity for the pair of
/// homogeneous extensions at exponents p and n-p.
double parseval_check(const bodies::Body& K, const bodies::Body& L, double p,
                      std::shared_ptr<const sphere::SphereGrid> grid, int lmax = 16);

double section_stability_constant(int n, double alpha);
double section_separation_constant(int n, double alpha, double r_norm);
double projection_stability_constant(int n, double alpha, double R_norm);

VerifierReport verify_frac_section_stability(const bodies::Body& K, const bodies::Body& L,
                                             double alpha, const RunConfig& cfg = {});
VerifierReport verify_frac_section_separation(const bodies::Body& K, const bodies::Body& L,
                                              double alpha, const RunConfig& cfg = {});
VerifierReport verify_frac_projection_stability(const bodies::Body& K, const bodies::Body& L,
                                                double alpha, const RunConfig& cfg = {});

}  // namespace gtomo::spectral

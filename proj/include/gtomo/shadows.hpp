#pragma once

#include <memory>
#include <span>
#include <string>

#include "gtomo/bodies.hpp"
#include "gtomo/report.hpp"
#include "gtomo/sphere.hpp"

namespace gtomo::shadows {

/// Hyperplane projection volume P_K at one direction, Cauchy formula route:
/// (1/2) integral of |<xi,u>| against the surface area measure (curvature
/// density quadrature, facet sum, or generator sum).
double projection_function_at(const bodies::Body& K, std::span<const double> xi,
                              const sphere::SphereGrid* density_grid = nullptr);

/// P_K sampled on a grid (direct route).
sphere::SphericalFunction projection_function(const bodies::Body& K,
                                              std::shared_ptr<const sphere::SphereGrid> grid);

/// P_K through the Fourier route -(1/pi) * transform of the curvature
/// extension; smooth families with curvature data only.
sphere::SphericalFunction projection_function_spectral(
    const bodies::Body& K, std::shared_ptr<const sphere::SphereGrid> grid, int lmax = 16);

/// V_1(K, L) = (1/n) integral of h_L against the surface measure of K.
double mixed_volume_v1(const bodies::Body& K, const bodies::Body& L,
                       const sphere::SphereGrid& grid);

/// V_1(K,L) - Vol(K)^{(n-1)/n} Vol(L)^{1/n}; nonnegative for convex bodies.
double minkowski_check(const bodies::Body& K, const bodies::Body& L,
                       const sphere::SphereGrid& grid);

/// Sign certificate for membership in the projection-body class: the
/// transform of the degree-1 support extension must be <= 0 on the sphere.
struct ProjectionCertificate {
  std::string body;
  sphere::SphericalFunction hhat;
  double max_hhat = 0;
  double tol = 0;  // 1e-4 * sup|hhat|
  Verdict verdict = Verdict::inconclusive;
};

ProjectionCertificate projection_body_certificate(const bodies::Body& L, int lmax = 16,
                                                  int resolution = 0);

VerifierReport verify_shephard_stability(const bodies::Body& K, const bodies::Body& L,
                                         const RunConfig& cfg = {});
VerifierReport verify_shephard_separation(const bodies::Body& K, const bodies::Body& L,
                                          const RunConfig& cfg = {});

}  // namespace gtomo::shadows

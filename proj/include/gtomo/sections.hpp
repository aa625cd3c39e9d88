#pragma once

#include <memory>
#include <span>
#include <string>

#include "gtomo/bodies.hpp"
#include "gtomo/report.hpp"
#include "gtomo/sphere.hpp"

namespace gtomo::sections {

/// Spherical Radon transform of f at xi: integral of f over the great
/// subsphere orthogonal to xi. Requires f.evaluator.
double radon_direct(const sphere::SphericalFunction& f, std::span<const double> xi);

/// Funk-Hecke eigenvalues c_{n,k} of the transform on even degrees up to lmax.
sphere::MultiplierSequence radon_multipliers(int n, int lmax);

/// Central hyperplane section function S_K, spectral route.
sphere::SphericalFunction section_function(const bodies::Body& K,
                                           std::shared_ptr<const sphere::SphereGrid> grid,
                                           int lmax = 16);

/// Same quantity through the direct subsphere quadrature, for cross-checks.
double section_function_direct(const bodies::Body& K, std::span<const double> xi,
                               int resolution = 0);

using CertVerdict = Verdict;

/// Candidate generating density g with R g = rho_K, recovered by dividing the
/// harmonic components of rho_K by the transform eigenvalues.
struct IntersectionCertificate {
  std::string body;
  sphere::SphericalFunction density;
  double min_density = 0;
  double tol = 0;  // 1e-4 * sup|g|
  CertVerdict verdict = CertVerdict::inconclusive;
  bool low_dim_shortcut = false;  // convex body, n <= 4
};

IntersectionCertificate intersection_certificate(const bodies::Body& K, int lmax = 16,
                                                 int resolution = 0);

VerifierReport verify_bp_stability(const bodies::Body& K, const bodies::Body& L,
                                   const RunConfig& cfg = {});
VerifierReport verify_bp_separation(const bodies::Body& K, const bodies::Body& L,
                                    const RunConfig& cfg = {});
VerifierReport verify_corollary_n4(const bodies::Body& K, const bodies::Body& L,
                                   const RunConfig& cfg = {});

}  // namespace gtomo::sections

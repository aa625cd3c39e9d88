#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtomo/sphere.hpp"

namespace gtomo::bodies {

enum class Family { ball, ellipsoid, lp_ball, perturbed_ball, cube, polytope, zonotope };

struct Facet {
  std::vector<double> normal;  // unit outer normal
  double offset = 0;           // support value at the normal
  double area = 0;             // (n-1)-measure; 0 if unknown
};

/// Origin-symmetric star/convex body. The radial evaluator is always
/// present; support and curvature evaluators only where the family admits
/// closed forms. Facets carry the atomic surface-area data of polytopes.
struct Body {
  int dim = 0;
  Family family = Family::ball;
  std::string label;
  std::vector<double> params;

  std::function<double(std::span<const double>)> radial;     // rho_K on S^{n-1}
  std::function<double(std::span<const double>)> support;    // h_K, 1-homogeneous
  std::function<double(std::span<const double>)> curvature;  // f_K density
  std::vector<Facet> facets;

  bool convex = false;
  bool smooth = false;  // infinitely smooth family

  bool has_support() const { return bool(support); }
  bool has_curvature() const { return bool(curvature); }
  bool has_facets() const { return !facets.empty(); }
};

struct RadiusData {
  double r_norm = 0;  // min rho / Vol^{1/n}
  double R_norm = 0;  // max rho / Vol^{1/n}
};

Body make_ball(int n, double radius = 1.0);
Body make_ellipsoid(std::vector<double> semi_axes);
/// p >= 1; p = infinity() gives the cube [-1,1]^n.
Body make_lp_ball(int n, double p);
/// rho = 1 + delta * Y with Y the zonal even-polynomial pattern of the given
/// degree (2 or 4) about coordinate axis `axis`. |delta| <= 0.3.
Body make_perturbed_ball(int n, double delta, int degree = 2, int axis = -1);
Body make_cube(int n, double half_side = 1.0);
/// Facet representation: symmetric set required (normals closed under
/// negation); areas optional (0 = unknown, disables facet-sum operations).
Body make_polytope(int n, std::vector<Facet> facets);
/// Vertex representation conv{+-v_i}: exact support, radial recovered
/// numerically from the support function.
Body make_polytope_vertices(int n, std::vector<std::vector<double>> vertices);
Body make_zonotope(int n, std::vector<std::vector<double>> generators);

/// (1/n) integral of rho^n over the grid.
double volume(const Body& K, const sphere::SphereGrid& grid);

/// Closed-form volume where the family admits one.
std::optional<double> analytic_volume(const Body& K);
std::optional<double> analytic_section(const Body& K, std::span<const double> xi);
std::optional<double> analytic_projection(const Body& K, std::span<const double> xi);

RadiusData normalized_radii(const Body& K, const sphere::SphereGrid& grid);

/// Scale by t > 0 (radial, support, curvature and facet data all rescale).
Body scaled(const Body& K, double t);

sphere::SphericalFunction sample_radial_power(const Body& K,
                                              std::shared_ptr<const sphere::SphereGrid> grid,
                                              double power);

/// Samples the planar curvature condition r^2 + 2 r'^2 - r r'' >= 0 on random
/// central 2-sections; returns the smallest sampled value.
double sampled_convexity_margin(const Body& K, unsigned seed, int nsections = 32);

}  // namespace gtomo::bodies

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gtomo/bodies.hpp"
#include "gtomo/specfun.hpp"

using namespace gtomo;

namespace {

double ball_volume(int n, double r = 1.0) {
  return std::pow(M_PI, 0.5 * n) / std::exp(specfun::gamma_ln(0.5 * n + 1)) *
         std::pow(r, n);
}

std::vector<double> unit(std::vector<double> v) {
  double s = 0;
  for (double c : v) s += c * c;
  for (double& c : v) c /= std::sqrt(s);
  return v;
}

}  // namespace

TEST_CASE("ball evaluators and closed-form volume") {
  auto B = bodies::make_ball(3, 2.0);
  double u[3] = {0.6, 0.0, 0.8};
  CHECK(B.radial({u, 3}) == doctest::Approx(2.0));
  CHECK(B.support({u, 3}) == doctest::Approx(2.0));
  REQUIRE(B.has_curvature());
  CHECK(B.curvature({u, 3}) == doctest::Approx(4.0));  // r^{n-1}
  CHECK(*bodies::analytic_volume(B) == doctest::Approx(ball_volume(3, 2.0)).epsilon(1e-13));

  auto grid = sphere::make_grid(3);
  CHECK(bodies::volume(B, *grid) == doctest::Approx(ball_volume(3, 2.0)).epsilon(1e-12));
  CHECK(*bodies::analytic_section(B, {u, 3}) ==
        doctest::Approx(ball_volume(2, 2.0)).epsilon(1e-13));
  CHECK(*bodies::analytic_projection(B, {u, 3}) ==
        doctest::Approx(ball_volume(2, 2.0)).epsilon(1e-13));
}

TEST_CASE("ellipsoid evaluators, sections and projections") {
  std::vector<double> ax = {1.5, 1.0, 0.5};
  auto E = bodies::make_ellipsoid(ax);
  auto u = unit({0.2, -0.7, 0.4});
  double h2 = 0, q = 0;
  for (int c = 0; c < 3; ++c) {
    h2 += ax[c] * ax[c] * u[c] * u[c];
    q += u[c] * u[c] / (ax[c] * ax[c]);
  }
  CHECK(E.support({u.data(), 3}) == doctest::Approx(std::sqrt(h2)).epsilon(1e-13));
  CHECK(E.radial({u.data(), 3}) == doctest::Approx(1.0 / std::sqrt(q)).epsilon(1e-13));
  CHECK(*bodies::analytic_volume(E) ==
        doctest::Approx(ball_volume(3) * 1.5 * 1.0 * 0.5).epsilon(1e-13));

  // central section perpendicular to an axis: area pi * (product of the
  // other semi-axes); projection along an axis has the same closed form
  double e1[3] = {1, 0, 0};
  CHECK(*bodies::analytic_section(E, {e1, 3}) == doctest::Approx(M_PI * 0.5).epsilon(1e-12));
  CHECK(*bodies::analytic_projection(E, {e1, 3}) ==
        doctest::Approx(M_PI * 0.5).epsilon(1e-12));
  // general direction: section area = pi * vol / (omega_1 ... ) known form
  // |E ∩ u^perp| = pi * a1 a2 a3 / h_E(u)
  CHECK(*bodies::analytic_section(E, {u.data(), 3}) ==
        doctest::Approx(M_PI * 0.75 / std::sqrt(h2)).epsilon(1e-12));

  CHECK_THROWS_AS(bodies::make_ellipsoid({1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(bodies::make_ellipsoid({}), std::invalid_argument);
}

TEST_CASE("lp balls interpolate between cross-polytope and cube") {
  auto B4 = bodies::make_lp_ball(3, 4.0);
  auto u = unit({1.0, 1.0, 1.0});
  const double expect = std::pow(3.0 * std::pow(u[0], 4), -0.25);
  CHECK(B4.radial({u.data(), 3}) == doctest::Approx(expect).epsilon(1e-13));

  // closed-form volume: 2^n Gamma(1 + 1/p)^n / Gamma(1 + n/p)
  const double vol = std::exp(3 * std::log(2.0) +
                              3 * specfun::gamma_ln(1.25) - specfun::gamma_ln(1.75));
  CHECK(*bodies::analytic_volume(B4) == doctest::Approx(vol).epsilon(1e-12));
  auto grid = sphere::make_grid(3);
  CHECK(bodies::volume(B4, *grid) == doctest::Approx(vol).epsilon(1e-6));

  auto B1 = bodies::make_lp_ball(3, 1.0);
  CHECK(*bodies::analytic_volume(B1) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(bodies::make_lp_ball(3, 0.5), std::invalid_argument);
}

TEST_CASE("cube volume, sections, projections") {
  auto C = bodies::make_cube(3, 1.0);
  double e1[3] = {1, 0, 0};
  auto d = unit({1.0, 1.0, 0.0});
  CHECK(*bodies::analytic_volume(C) == doctest::Approx(8.0));
  CHECK_FALSE(bodies::analytic_section(C, {e1, 3}).has_value());
  CHECK(*bodies::analytic_projection(C, {e1, 3}) == doctest::Approx(4.0));
  // projection function of the cube: (2s)^{n-1} sum |xi_i|
  CHECK(*bodies::analytic_projection(C, {d.data(), 3}) ==
        doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(C.support({d.data(), 3}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(C.radial({d.data(), 3}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

  auto grid = sphere::make_grid(3);
  CHECK(bodies::volume(C, *grid) == doctest::Approx(8.0).epsilon(2e-2));
}

TEST_CASE("zonotopes: the cube as a zonotope, and exact shadow areas") {
  auto Z = bodies::make_zonotope(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  double e1[3] = {1, 0, 0};
  auto d = unit({1.0, -1.0, 1.0});
  CHECK(*bodies::analytic_volume(Z) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(*bodies::analytic_projection(Z, {e1, 3}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(*bodies::analytic_projection(Z, {d.data(), 3}) ==
        doctest::Approx(4.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(Z.support({d.data(), 3}) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  // radial of the unit cube in the diagonal direction
  CHECK(Z.radial({d.data(), 3}) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));

  // skewed generators: volume 2^n sum over n-subsets of |det|
  auto Z2 = bodies::make_zonotope(2, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(*bodies::analytic_volume(Z2) == doctest::Approx(12.0).epsilon(1e-12));
  CHECK_THROWS_AS(bodies::make_zonotope(3, {{1, 0}}), std::invalid_argument);
}

TEST_CASE("vertex polytopes recover the radial function") {
  auto X = bodies::make_polytope_vertices(
      3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});  // cross-polytope conv{+-e_i}
  auto d = unit({1.0, 1.0, 1.0});
  double e1[3] = {1, 0, 0};
  CHECK(X.support({d.data(), 3}) == doctest::Approx(d[0]).epsilon(1e-13));
  CHECK(X.radial({e1, 3}) == doctest::Approx(1.0).epsilon(1e-6));
  // rho(u) = 1 / (|u_1| + |u_2| + |u_3|)
  CHECK(X.radial({d.data(), 3}) == doctest::Approx(1.0 / (3 * d[0])).epsilon(1e-6));
  auto grid = sphere::make_grid(3);
  CHECK(bodies::volume(X, *grid) == doctest::Approx(4.0 / 3.0).epsilon(2e-2));
}

TEST_CASE("facet polytopes require symmetric normals") {
  std::vector<bodies::Facet> facets;
  for (int c = 0; c < 2; ++c)
    for (double s : {1.0, -1.0}) {
      bodies::Facet f;
      f.normal = {0, 0};
      f.normal[c] = s;
      f.offset = 1.0;
      f.area = 2.0;
      facets.push_back(f);
    }
  auto P = bodies::make_polytope(2, facets);
  auto d = unit({1.0, 1.0});
  CHECK(P.radial({d.data(), 2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(P.has_support());  // facet data alone does not give h_K

  facets.pop_back();  // break the symmetry
  CHECK_THROWS_AS(bodies::make_polytope(2, facets), std::invalid_argument);
}

TEST_CASE("perturbed balls follow the zonal pattern and stay convex") {
  auto K = bodies::make_perturbed_ball(3, 0.1, 2);
  double u[3] = {0, 0, 1};
  double v[3] = {1, 0, 0};
  CHECK(K.radial({u, 3}) == doctest::Approx(1.0 + 0.1 * (1.0 - 1.0 / 3)).epsilon(1e-13));
  CHECK(K.radial({v, 3}) == doctest::Approx(1.0 - 0.1 / 3).epsilon(1e-13));
  CHECK(K.smooth);
  CHECK(bodies::sampled_convexity_margin(K, 99) > 0.0);
  // constant radial r: margin r^2 + 2 r'^2 - r r'' = r^2
  CHECK(bodies::sampled_convexity_margin(bodies::make_ball(4), 7) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(bodies::make_perturbed_ball(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bodies::make_perturbed_ball(3, 0.1, 3), std::invalid_argument);
}

TEST_CASE("normalized radii and scale invariance") {
  auto grid3 = sphere::make_grid(3);
  auto B = bodies::make_ball(3, 2.5);
  auto rb = bodies::normalized_radii(B, *grid3);
  const double expect = std::pow(ball_volume(3), -1.0 / 3);
  CHECK(rb.r_norm == doctest::Approx(expect).epsilon(1e-12));
  CHECK(rb.R_norm == doctest::Approx(expect).epsilon(1e-12));

  auto grid2 = sphere::make_grid(2);
  auto C = bodies::make_cube(2, 1.0);
  auto rc = bodies::normalized_radii(C, *grid2);
  CHECK(rc.r_norm == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rc.R_norm == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-10));

  // scaling changes the volume by t^n but not the normalized radii
  auto C3 = bodies::scaled(C, 3.0);
  CHECK(*bodies::analytic_volume(C3) == doctest::Approx(36.0).epsilon(1e-12));
  auto rs = bodies::normalized_radii(C3, *grid2);
  CHECK(rs.r_norm == doctest::Approx(rc.r_norm).epsilon(1e-9));
  CHECK(rs.R_norm == doctest::Approx(rc.R_norm).epsilon(1e-9));

  auto E = bodies::make_ellipsoid({2.0, 1.0, 1.0});
  auto Es = bodies::scaled(E, 0.5);
  double e1[3] = {1, 0, 0};
  CHECK(Es.support({e1, 3}) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(*bodies::analytic_volume(Es) ==
        doctest::Approx(0.125 * *bodies::analytic_volume(E)).epsilon(1e-12));
}

TEST_CASE("radial powers sample onto the grid") {
  auto grid = sphere::make_grid(4);
  auto B = bodies::make_ball(4, 2.0);
  auto f = bodies::sample_radial_power(B, grid, 3.0);
  for (std::size_t i = 0; i < grid->size(); i += 37) CHECK(f[i] == doctest::Approx(8.0));
  // integral of rho^n / n equals the volume
  auto fn = bodies::sample_radial_power(B, grid, 4.0);
  CHECK(sphere::integrate(fn) / 4 == doctest::Approx(ball_volume(4, 2.0)).epsilon(1e-12));
}

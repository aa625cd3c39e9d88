#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gtomo/sections.hpp"
#include "gtomo/specfun.hpp"

using namespace gtomo;

namespace {

double ball_vol(int n, double r = 1.0) {
  return std::pow(M_PI, 0.5 * n) / std::exp(specfun::gamma_ln(0.5 * n + 1)) *
         std::pow(r, n);
}

}  // namespace

TEST_CASE("transform eigenvalues on the sphere") {
  auto m3 = sections::radon_multipliers(3, 8);
  REQUIRE(m3.entries.size() == 5);
  CHECK(m3.entries[0] == doctest::Approx(2 * M_PI).epsilon(1e-13));
  // Legendre values at zero: P_2 = -1/2, P_4 = 3/8, P_6 = -5/16
  CHECK(m3.entries[1] == doctest::Approx(-M_PI).epsilon(1e-13));
  CHECK(m3.entries[2] == doctest::Approx(0.75 * M_PI).epsilon(1e-13));
  CHECK(m3.entries[3] == doctest::Approx(-2 * M_PI * 5.0 / 16).epsilon(1e-13));
  // n = 2 degenerates to Chebyshev: |S^0| T_k(0) = 2 (-1)^{k/2}
  auto m2 = sections::radon_multipliers(2, 4);
  CHECK(m2.entries[0] == doctest::Approx(2.0));
  CHECK(m2.entries[1] == doctest::Approx(-2.0));
  CHECK(m2.entries[2] == doctest::Approx(2.0));
  CHECK_THROWS_AS(sections::radon_multipliers(1, 4), std::invalid_argument);
}

TEST_CASE("direct transform reproduces the eigenvalue relation") {
  auto grid = sphere::make_grid(3);
  auto one = sphere::sample(grid, [](std::span<const double>) { return 1.0; });
  auto y2 = sphere::sample(grid, [](std::span<const double> u) {
    return u[2] * u[2] - 1.0 / 3;
  });
  double xi[3] = {0, 0, 1};
  double g[3] = {0.48, -0.6, 0.64};
  CHECK(sections::radon_direct(one, {xi, 3}) == doctest::Approx(2 * M_PI).epsilon(1e-12));
  // R Y_2 = c_{3,2} Y_2 with c_{3,2} = -pi
  CHECK(sections::radon_direct(y2, {xi, 3}) ==
        doctest::Approx(-M_PI * (2.0 / 3)).epsilon(1e-12));
  CHECK(sections::radon_direct(y2, {g, 3}) ==
        doctest::Approx(-M_PI * (0.64 * 0.64 - 1.0 / 3)).epsilon(1e-12));
}

TEST_CASE("the transform is self-dual under the sphere inner product") {
  auto grid = sphere::make_grid(3);
  auto f = sphere::sample(grid, [](std::span<const double> u) {
    return std::exp(u[0] * u[0] - 0.5 * u[2] * u[2]);
  });
  auto h = sphere::sample(grid, [](std::span<const double> u) {
    return 1.0 / (2.0 + u[1] * u[1] - u[0] * u[2]);
  });
  double lhs = 0, rhs = 0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    lhs += grid->weights[i] * sections::radon_direct(f, grid->node(i)) * h[i];
    rhs += grid->weights[i] * f[i] * sections::radon_direct(h, grid->node(i));
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
}

TEST_CASE("section function of balls and ellipsoids") {
  auto grid = sphere::make_grid(3);
  auto B = bodies::make_ball(3, 2.0);
  auto sb = sections::section_function(B, grid);
  for (std::size_t i = 0; i < grid->size(); i += 53)
    CHECK(sb[i] == doctest::Approx(4 * M_PI).epsilon(1e-10));

  auto E = bodies::make_ellipsoid({1.3, 1.0, 0.8});
  auto se = sections::section_function(E, grid);
  double worst = 0;
  for (std::size_t i = 0; i < grid->size(); i += 7) {
    const double ref = *bodies::analytic_section(E, grid->node(i));
    worst = std::max(worst, std::abs(se[i] - ref) / ref);
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("spectral and direct section routes agree") {
  auto grid = sphere::make_grid(3);
  auto K = bodies::make_lp_ball(3, 4.0);
  auto s = sections::section_function(K, grid, 16);
  double worst = 0;
  for (std::size_t i = 0; i < grid->size(); i += 11) {
    const double d = sections::section_function_direct(K, grid->node(i));
    worst = std::max(worst, std::abs(s[i] - d));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("section function scales with degree n-1") {
  auto grid = sphere::make_grid(3);
  auto K = bodies::make_lp_ball(3, 4.0);
  auto s1 = sections::section_function(K, grid);
  auto s2 = sections::section_function(bodies::scaled(K, 1.7), grid);
  const double t2 = 1.7 * 1.7;
  double worst = 0;
  for (std::size_t i = 0; i < grid->size(); ++i)
    worst = std::max(worst, std::abs(s2[i] - t2 * s1[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("ball membership certificates recover the uniform density") {
  auto c3 = sections::intersection_certificate(bodies::make_ball(3));
  CHECK(c3.verdict == Verdict::certified);
  CHECK(c3.min_density == doctest::Approx(1.0 / (2 * M_PI)).epsilon(1e-10));
  CHECK(c3.low_dim_shortcut);

  auto c5 = sections::intersection_certificate(bodies::make_ball(5));
  CHECK(c5.verdict == Verdict::certified);
  CHECK(c5.min_density == doctest::Approx(1.0 / (2 * M_PI * M_PI)).epsilon(1e-10));
  CHECK_FALSE(c5.low_dim_shortcut);
}

TEST_CASE("low-dimensional convex bodies certify via the class theorem") {
  auto c = sections::intersection_certificate(bodies::make_cube(4));
  CHECK(c.verdict == Verdict::certified);
  CHECK(c.low_dim_shortcut);
}

TEST_CASE("the five-dimensional cube is certified out of the class") {
  auto c = sections::intersection_certificate(bodies::make_cube(5));
  CHECK(c.verdict == Verdict::certified_not);
  CHECK_FALSE(c.low_dim_shortcut);
  CHECK(c.min_density < -10 * c.tol);
}

TEST_CASE("volume stability bound for nested balls") {
  auto K = bodies::make_ball(3, 1.0);
  auto L = bodies::make_ball(3, 1.1);
  auto r = sections::verify_bp_stability(K, L);
  CHECK(r.pass);
  CHECK(r.hypothesis_met);
  CHECK(r.epsilon == doctest::Approx(0.0));
  const double expect = std::pow(ball_vol(3, 1.1), 2.0 / 3) - std::pow(ball_vol(3), 2.0 / 3);
  CHECK(r.margin == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("separation bound certifies a strict gap in section volumes") {
  auto K = bodies::make_ball(3, 0.8);
  auto L = bodies::make_ball(3, 1.0);
  auto r = sections::verify_bp_separation(K, L);
  CHECK(r.pass);
  CHECK(r.hypothesis_met);
  // eps = min (S_L - S_K) = pi (1 - 0.64)
  CHECK(r.epsilon == doctest::Approx(M_PI * 0.36).epsilon(1e-9));
  const double c = std::sqrt(2 * M_PI / 4) * 0.8 / std::pow(ball_vol(3, 0.8), 1.0 / 3);
  CHECK(r.constant == doctest::Approx(c).epsilon(1e-9));
  const double margin = std::pow(ball_vol(3), 2.0 / 3) -
                        std::pow(ball_vol(3, 0.8), 2.0 / 3) - c * M_PI * 0.36;
  CHECK(r.margin == doctest::Approx(margin).epsilon(1e-7));
}

TEST_CASE("separation rejects pairs without a strict section gap") {
  auto K = bodies::make_ball(3, 1.2);
  auto L = bodies::make_ball(3, 1.0);
  auto r = sections::verify_bp_separation(K, L);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.hypothesis_met);
  CHECK(r.epsilon == 0.0);
}

TEST_CASE("two-sided volume comparison in dimension four") {
  auto K = bodies::make_ellipsoid({1.2, 1.0, 1.0, 0.9});
  auto L = bodies::make_ball(4, 1.05);
  auto r = sections::verify_corollary_n4(K, L);
  CHECK(r.pass);
  CHECK(r.lhs <= r.rhs + r.tol);
  CHECK_THROWS_AS(
      sections::verify_corollary_n4(bodies::make_ball(5), bodies::make_ball(5)),
      std::invalid_argument);
}

#include "gtomo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gtomo/specfun.hpp"

namespace gtomo::spectral {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool gamma_pole(double x) {
  return x < 0.5 && std::abs(x - std::round(x)) < 1e-9;
}

// local extremum refinement of a multiplier synthesis around a grid node
double refine_extremum(const sphere::SphericalFunction& f, const sphere::MultiplierSequence& m,
                       std::span<const double> start, double start_val, bool maximize) {
  const int n = f.grid->dim;
  std::vector<double> x(start.begin(), start.end());
  double best = start_val;
  const double sgn = maximize ? 1.0 : -1.0;
  double step = 0.5 * kPi / f.grid->resolution;
  std::vector<double> cand(n);
  while (step > 1e-6) {
    bool improved = false;
    for (int c = 0; c < n; ++c)
      for (double s : {step, -step}) {
        cand = x;
        cand[c] += s;
        double nm = 0;
        for (double v : cand) nm += v * v;
        nm = std::sqrt(nm);
        for (auto& v : cand) v /= nm;
        const double val = sphere::apply_multiplier_at(f, m, cand)[0];
        if (sgn * (val - best) > 1e-15) {
          best = val;
          x = cand;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return best;
}

double body_volume(const bodies::Body& K, const sphere::SphereGrid& grid) {
  if (auto v = bodies::analytic_volume(K)) return *v;
  return bodies::volume(K, grid);
}

void check_section_range(int n, double alpha) {
  if (n < 4) throw std::invalid_argument("fractional section comparison requires n >= 4");
  if (alpha < n - 4 || alpha >= n - 1)
    throw std::invalid_argument("alpha must lie in [n-4, n-1): the comparison fails below n-4");
}

void check_projection_range(int n, double alpha) {
  if (n < 3) throw std::invalid_argument("fractional projection comparison requires n >= 3");
  if (alpha < n || alpha >= n + 1)
    throw std::invalid_argument("alpha must lie in [n, n+1): the comparison fails below n");
}

}  // namespace

double ft_multiplier(int n, double p, int k) {
  if (k < 0 || k % 2) throw std::invalid_argument("ft_multiplier: k must be even");
  const double a = 0.5 * (n - p + k);  // numerator argument
  const double b = 0.5 * (p + k);      // denominator argument
  if (gamma_pole(a))
    throw std::domain_error("ft_multiplier: p >= n+k pole, outside the continuation range");
  if (gamma_pole(b)) return 0.0;
  const double sign = (k / 2) % 2 ? -1.0 : 1.0;
  const double scale = std::pow(2.0, n - p) * std::pow(kPi, 0.5 * n);
  if (a > 0 && b > 0) return sign * scale * std::exp(specfun::gamma_ln(a) - specfun::gamma_ln(b));
  return sign * scale * specfun::gamma_signed(a) / specfun::gamma_signed(b);
}

sphere::MultiplierSequence ft_multipliers(int n, double p, int lmax) {
  sphere::MultiplierSequence m;
  m.dim = n;
  m.descriptor = "ft(p=" + std::to_string(p) + ")";
  for (int k = 0; k <= lmax; k += 2) m.entries.push_back(ft_multiplier(n, p, k));
  return m;
}

sphere::SphericalFunction ft_homogeneous(const HomogeneousExtension& ext, int lmax) {
  const int n = ext.base.grid->dim;
  return sphere::apply_multiplier(ext.base, ft_multipliers(n, -ext.degree, lmax));
}

sphere::SphericalFunction frac_laplacian_section(const bodies::Body& K, double alpha,
                                                 std::shared_ptr<const sphere::SphereGrid> grid,
                                                 int lmax) {
  const int n = K.dim;
  check_section_range(n, alpha);
  auto f = bodies::sample_radial_power(K, grid, n - 1);
  auto m = ft_multipliers(n, n - 1 - alpha, lmax);
  for (auto& v : m.entries) v /= kPi * (n - 1);
  return sphere::apply_multiplier(f, m);
}

sphere::SphericalFunction frac_laplacian_projection(const bodies::Body& L, double alpha,
                                                    std::shared_ptr<const sphere::SphereGrid> grid,
                                                    int lmax) {
  const int n = L.dim;
  check_projection_range(n, alpha);
  if (!L.has_curvature())
    throw std::invalid_argument("frac_laplacian_projection: curvature density required");
  auto f = sphere::sample(grid, L.curvature);
  auto m = ft_multipliers(n, n + 1 - alpha, lmax);
  for (auto& v : m.entries) v /= -kPi;
  return sphere::apply_multiplier(f, m);
}

PosDefReport posdef_check(const bodies::Body& K, double alpha, int lmax, int resolution) {
  const int n = K.dim;
  auto grid = sphere::make_grid(n, resolution);
  auto rho = sphere::sample(grid, K.radial);
  auto m = ft_multipliers(n, alpha + 1.0, lmax);
  // smoothed synthesis: a positive convolution cannot create a negative part,
  // so the sign conclusion survives for non-smooth bodies
  const auto sigma = sphere::cesaro_factors(n, lmax);
  for (std::size_t j = 0; j < m.entries.size(); ++j) m.entries[j] *= sigma[j];
  auto g = sphere::apply_multiplier(rho, m);
  PosDefReport rep;
  std::size_t imin = 0;
  rep.min_value = sphere::min_value(g, &imin);
  rep.sup = sphere::sup_norm(g);
  rep.min_value = refine_extremum(rho, m, grid->node(imin), rep.min_value, false);
  rep.tol = 1e-4 * rep.sup;
  rep.in_lemma_range = K.convex && alpha >= n - 4 && alpha < n - 1;
  rep.pass = !rep.in_lemma_range || rep.min_value >= -rep.tol;
  return rep;
}

double parseval_check(const bodies::Body& K, const bodies::Body& L, double p,
                      std::shared_ptr<const sphere::SphereGrid> grid, int lmax) {
  const int n = K.dim;
  if (p <= 0 || p >= n) throw std::invalid_argument("parseval_check: p in (0, n)");
  auto fk = bodies::sample_radial_power(K, grid, p);
  auto fl = bodies::sample_radial_power(L, grid, n - p);
  auto A = sphere::apply_multiplier(fk, ft_multipliers(n, p, lmax));
  auto B = sphere::apply_multiplier(fl, ft_multipliers(n, n - p, lmax));
  double lhs = 0, rhs = 0, c1 = 0, c2 = 0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double w = grid->weights[i];
    double x = w * A[i] * B[i] - c1;
    double t = lhs + x;
    c1 = (t - lhs) - x;
    lhs = t;
    x = w * fk[i] * fl[i] - c2;
    t = rhs + x;
    c2 = (t - rhs) - x;
    rhs = t;
  }
  rhs *= std::pow(2.0 * kPi, n);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double section_stability_constant(int n, double alpha) {
  return std::sqrt(kPi) * (n - 1) *
         std::exp(specfun::gamma_ln(0.5 * (n - alpha - 1)) -
                  specfun::gamma_ln(0.5 * (alpha + 1)) -
                  (double(n - 1) / n) * specfun::gamma_ln(0.5 * n)) /
         (std::pow(2.0, alpha + 1.0 / n) * std::pow(double(n), double(n - 1) / n));
}

double section_separation_constant(int n, double alpha, double r_norm) {
  return r_norm * kPi * (n - 1) *
         std::exp(specfun::gamma_ln(0.5 * (n - alpha - 1)) -
                  specfun::gamma_ln(0.5 * (alpha + 1)) - specfun::gamma_ln(0.5 * n)) /
         (n * std::pow(2.0, alpha));
}

double projection_stability_constant(int n, double alpha, double R_norm) {
  return std::exp(specfun::gamma_ln(0.5 * (n - alpha + 1)) -
                  specfun::gamma_ln(0.5 * (alpha + 1))) *
         specfun::sphere_surface_area(n) * R_norm /
         (std::pow(2.0, alpha + 1) * std::pow(kPi, 0.5 * n) * n);
}

VerifierReport verify_frac_section_stability(const bodies::Body& K, const bodies::Body& L,
                                             double alpha, const RunConfig& cfg) {
  if (K.dim != L.dim) throw std::invalid_argument("dimension mismatch");
  const int n = K.dim;
  check_section_range(n, alpha);
  auto grid = sphere::make_grid(n, cfg.resolution);

  VerifierReport r;
  r.theorem = "frac-section-stability";
  r.bodies = {K.label, L.label};
  r.resolution = grid->resolution;
  r.lmax = cfg.lmax;
  r.alpha = alpha;
  if (!K.smooth || !L.smooth) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: smooth bodies required");
  }
  if (!K.convex) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: K must be convex");
  }

  auto dk = frac_laplacian_section(K, alpha, grid, cfg.lmax);
  auto dl = frac_laplacian_section(L, alpha, grid, cfg.lmax);
  double eps = 0;
  for (std::size_t i = 0; i < grid->size(); ++i) eps = std::max(eps, dk[i] - dl[i]);
  r.epsilon = eps;
  r.constant = section_stability_constant(n, alpha);
  r.lhs = std::pow(body_volume(K, *grid), double(n - 1) / n);
  r.rhs = std::pow(body_volume(L, *grid), double(n - 1) / n) + r.constant * eps;
  finalize(r);
  return r;
}

VerifierReport verify_frac_section_separation(const bodies::Body& K, const bodies::Body& L,
                                              double alpha, const RunConfig& cfg) {
  if (K.dim != L.dim) throw std::invalid_argument("dimension mismatch");
  const int n = K.dim;
  check_section_range(n, alpha);
  auto grid = sphere::make_grid(n, cfg.resolution);

  VerifierReport r;
  r.theorem = "frac-section-separation";
  r.bodies = {K.label, L.label};
  r.resolution = grid->resolution;
  r.lmax = cfg.lmax;
  r.alpha = alpha;
  if (!K.smooth || !L.smooth) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: smooth bodies required");
  }
  if (!K.convex) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: K must be convex");
  }

  auto dk = frac_laplacian_section(K, alpha, grid, cfg.lmax);
  auto dl = frac_laplacian_section(L, alpha, grid, cfg.lmax);
  double eps = 1e300;
  for (std::size_t i = 0; i < grid->size(); ++i) eps = std::min(eps, dl[i] - dk[i]);
  if (eps <= 0) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: fractional section gap is not positive");
    eps = std::max(eps, 0.0);
  }
  r.epsilon = eps;
  const double rk = bodies::normalized_radii(K, *grid).r_norm;
  r.constant = section_separation_constant(n, alpha, rk);
  r.lhs = std::pow(body_volume(K, *grid), double(n - 1) / n);
  r.rhs = std::pow(body_volume(L, *grid), double(n - 1) / n) - r.constant * eps;
  finalize(r);
  return r;
}

VerifierReport verify_frac_projection_stability(const bodies::Body& K, const bodies::Body& L,
                                                double alpha, const RunConfig& cfg) {
  if (K.dim != L.dim) throw std::invalid_argument("dimension mismatch");
  const int n = K.dim;
  check_projection_range(n, alpha);
  auto grid = sphere::make_grid(n, cfg.resolution);

  VerifierReport r;
  r.theorem = "frac-projection-stability";
  r.bodies = {K.label, L.label};
  r.resolution = grid->resolution;
  r.lmax = cfg.lmax;
  r.alpha = alpha;
  if (!K.smooth || !L.smooth || !K.convex || !L.convex) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: smooth convex bodies required");
  }

  auto pk = frac_laplacian_projection(K, alpha, grid, cfg.lmax);
  auto pl = frac_laplacian_projection(L, alpha, grid, cfg.lmax);
  double eps = 0;
  for (std::size_t i = 0; i < grid->size(); ++i) eps = std::max(eps, pl[i] - pk[i]);
  r.epsilon = eps;
  const double Rl = bodies::normalized_radii(L, *grid).R_norm;
  r.constant = projection_stability_constant(n, alpha, Rl);
  r.lhs = std::pow(body_volume(K, *grid), double(n - 1) / n);
  r.rhs = std::pow(body_volume(L, *grid), double(n - 1) / n) + r.constant * eps;
  finalize(r);
  return r;
}

}  // namespace gtomo::spectral

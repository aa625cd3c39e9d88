#include "gtomo/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gtomo/specfun.hpp"
#include "gtomo/spectral.hpp"

namespace gtomo::shadows {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double body_volume(const bodies::Body& K, const sphere::SphereGrid& grid) {
  if (auto v = bodies::analytic_volume(K)) return *v;
  return bodies::volume(K, grid);
}

double refine_max(const sphere::SphericalFunction& f, const sphere::MultiplierSequence& m,
                  std::span<const double> start, double start_val) {
  const int n = f.grid->dim;
  std::vector<double> x(start.begin(), start.end());
  double best = start_val;
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
        if (val > best + 1e-15) {
          best = val;
          x = cand;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return best;
}

struct HhatScan {
  sphere::SphericalFunction hhat;
  double max_h = 0;
  double sup = 0;
};

HhatScan scan_support_transform(const bodies::Body& L,
                                std::shared_ptr<const sphere::SphereGrid> grid, int lmax) {
  auto h = sphere::sample(grid, L.support);
  auto m = spectral::ft_multipliers(L.dim, -1.0, lmax);
  const auto sigma = sphere::cesaro_factors(L.dim, lmax);
  for (std::size_t j = 0; j < m.entries.size(); ++j) m.entries[j] *= sigma[j];
  HhatScan out;
  out.hhat = sphere::apply_multiplier(h, m);
  std::size_t imax = 0;
  out.max_h = sphere::max_value(out.hhat, &imax);
  out.sup = sphere::sup_norm(out.hhat);
  out.max_h = refine_max(h, m, grid->node(imax), out.max_h);
  return out;
}

}  // namespace

double projection_function_at(const bodies::Body& K, std::span<const double> xi,
                              const sphere::SphereGrid* density_grid) {
  if (auto v = bodies::analytic_projection(K, xi)) return *v;
  if (!K.has_curvature())
    throw std::invalid_argument("projection_function: no curvature data for this family");
  std::shared_ptr<const sphere::SphereGrid> owned;
  if (!density_grid) {
    owned = sphere::make_grid(K.dim);
    density_grid = owned.get();
  }
  double sum = 0, comp = 0;
  for (std::size_t i = 0; i < density_grid->size(); ++i) {
    const auto u = density_grid->node(i);
    const double x =
        density_grid->weights[i] * std::abs(dot(xi, u)) * K.curvature(u) - comp;
    const double t = sum + x;
    comp = (t - sum) - x;
    sum = t;
  }
  return 0.5 * sum;
}

sphere::SphericalFunction projection_function(const bodies::Body& K,
                                              std::shared_ptr<const sphere::SphereGrid> grid) {
  const sphere::SphereGrid* g = grid.get();
  return sphere::sample(
      grid, [&K, g](std::span<const double> xi) { return projection_function_at(K, xi, g); });
}

sphere::SphericalFunction projection_function_spectral(
    const bodies::Body& K, std::shared_ptr<const sphere::SphereGrid> grid, int lmax) {
  if (!K.has_curvature())
    throw std::invalid_argument("projection_function_spectral: curvature density required");
  auto f = sphere::sample(grid, K.curvature);
  auto m = spectral::ft_multipliers(K.dim, K.dim + 1.0, lmax);
  for (auto& v : m.entries) v /= -kPi;
  return sphere::apply_multiplier(f, m);
}

double mixed_volume_v1(const bodies::Body& K, const bodies::Body& L,
                       const sphere::SphereGrid& grid) {
  if (!L.has_support()) throw std::invalid_argument("mixed_volume_v1: L needs a support function");
  const int n = K.dim;
  if (K.has_facets() && K.facets[0].area > 0) {
    double s = 0;
    for (const auto& f : K.facets) s += L.support(std::span<const double>(f.normal)) * f.area;
    return s / n;
  }
  if (!K.has_curvature()) throw std::invalid_argument("mixed_volume_v1: K needs surface data");
  double sum = 0, comp = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto u = grid.node(i);
    const double x = grid.weights[i] * L.support(u) * K.curvature(u) - comp;
    const double t = sum + x;
    comp = (t - sum) - x;
    sum = t;
  }
  return sum / n;
}

double minkowski_check(const bodies::Body& K, const bodies::Body& L,
                       const sphere::SphereGrid& grid) {
  const int n = K.dim;
  return mixed_volume_v1(K, L, grid) -
         std::pow(body_volume(K, grid), double(n - 1) / n) *
             std::pow(body_volume(L, grid), 1.0 / n);
}

ProjectionCertificate projection_body_certificate(const bodies::Body& L, int lmax,
                                                  int resolution) {
  if (!L.has_support())
    throw std::invalid_argument("projection_body_certificate: support function required");
  auto grid = sphere::make_grid(L.dim, resolution);
  auto scan = scan_support_transform(L, grid, lmax);

  ProjectionCertificate cert;
  cert.body = L.label;
  cert.hhat = std::move(scan.hhat);
  cert.max_hhat = scan.max_h;
  cert.tol = 1e-4 * scan.sup;

  if (scan.max_h <= cert.tol)
    cert.verdict = Verdict::certified;
  else if (scan.max_h > 10 * cert.tol) {
    auto scan2 = scan_support_transform(L, grid, lmax + 4);
    cert.verdict = scan2.max_h > 10 * (1e-4 * scan2.sup) ? Verdict::certified_not
                                                         : Verdict::inconclusive;
  } else
    cert.verdict = Verdict::inconclusive;
  return cert;
}

VerifierReport verify_shephard_stability(const bodies::Body& K, const bodies::Body& L,
                                         const RunConfig& cfg) {
  if (K.dim != L.dim) throw std::invalid_argument("dimension mismatch");
  const int n = K.dim;
  auto grid = sphere::make_grid(n, cfg.resolution);

  VerifierReport r;
  r.theorem = "projection-stability";
  r.bodies = {K.label, L.label};
  r.resolution = grid->resolution;
  r.lmax = cfg.lmax;

  auto cert = projection_body_certificate(L, cfg.lmax, cfg.resolution);
  if (cert.verdict == Verdict::certified_not) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: L not certified in the projection class");
  } else if (cert.verdict == Verdict::inconclusive) {
    r.flags.push_back("certification inconclusive");
  }

  auto pk = projection_function(K, grid);
  auto pl = projection_function(L, grid);
  double eps = 0;
  for (std::size_t i = 0; i < grid->size(); ++i) eps = std::max(eps, pk[i] - pl[i]);
  r.epsilon = eps;
  const double Rl = bodies::normalized_radii(L, *grid).R_norm;
  r.constant = std::sqrt(2.0 * kPi / n) * Rl;
  r.lhs = std::pow(body_volume(K, *grid), double(n - 1) / n);
  r.rhs = std::pow(body_volume(L, *grid), double(n - 1) / n) + r.constant * eps;
  finalize(r);
  return r;
}

VerifierReport verify_shephard_separation(const bodies::Body& K, const bodies::Body& L,
                                          const RunConfig& cfg) {
  if (K.dim != L.dim) throw std::invalid_argument("dimension mismatch");
  const int n = K.dim;
  auto grid = sphere::make_grid(n, cfg.resolution);

  VerifierReport r;
  r.theorem = "projection-separation";
  r.bodies = {K.label, L.label};
  r.resolution = grid->resolution;
  r.lmax = cfg.lmax;

  auto cert = projection_body_certificate(L, cfg.lmax, cfg.resolution);
  if (cert.verdict != Verdict::certified) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: L not certified in the projection class");
  }

  auto pk = projection_function(K, grid);
  auto pl = projection_function(L, grid);
  double eps = 1e300;
  for (std::size_t i = 0; i < grid->size(); ++i) eps = std::min(eps, pl[i] - pk[i]);
  if (eps <= 0) {
    r.hypothesis_met = false;
    r.flags.push_back("hypothesis unmet: P_K < P_L fails");
    eps = std::max(eps, 0.0);
  }
  r.epsilon = eps;
  r.constant = 1.0 / std::sqrt(std::exp(1.0));
  r.lhs = std::pow(body_volume(K, *grid), double(n - 1) / n);
  r.rhs = std::pow(body_volume(L, *grid), double(n - 1) / n) - r.constant * eps;
  finalize(r);
  return r;
}

}  // namespace gtomo::shadows

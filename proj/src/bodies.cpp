#include "gtomo/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "gtomo/specfun.hpp"

namespace gtomo::bodies {

namespace {

constexpr double kPi = 3.14159265358979323846;

double unit_ball_volume(int n) {
  return std::exp(0.5 * n * std::log(kPi) - specfun::gamma_ln(0.5 * n + 1.0));
}

double norm2(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// rho_K(u) = min over directions x of h(x)/<u,x>; deterministic coarse scan
// on a cached grid followed by pattern-search refinement.
class SupportRadial {
 public:
  SupportRadial(int n, std::function<double(std::span<const double>)> h)
      : n_(n), h_(std::move(h)),
        scan_(sphere::build_grid(n, n <= 3 ? 48 : (n == 4 ? 14 : 8))) {}

  double operator()(std::span<const double> u) const {
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> bx(n_);
    for (std::size_t i = 0; i < scan_.size(); ++i) {
      const auto x = scan_.node(i);
      const double d = dot(u, x);
      if (d < 0.2) continue;
      const double v = h_(x) / d;
      if (v < best) {
        best = v;
        std::copy(x.begin(), x.end(), bx.begin());
      }
    }
    // refine by coordinate pattern search on the sphere
    double step = 0.15;
    std::vector<double> cand(n_);
    while (step > 1e-7) {
      bool improved = false;
      for (int c = 0; c < n_; ++c) {
        for (double s : {step, -step}) {
          cand = bx;
          cand[c] += s;
          const double nm = norm2(cand);
          for (auto& v : cand) v /= nm;
          const double d = dot(u, std::span<const double>(cand));
          if (d < 0.1) continue;
          const double v = h_(cand) / d;
          if (v < best - 1e-15) {
            best = v;
            bx = cand;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    return best;
  }

 private:
  int n_;
  std::function<double(std::span<const double>)> h_;
  sphere::SphereGrid scan_;
};

void require_dim(int n) {
  if (n < 2 || n > 6) throw std::invalid_argument("body dimension must be in [2,6]");
}

double perturbation_pattern(int n, int degree, double t) {
  if (degree == 2) return t * t - 1.0 / n;
  if (degree == 4) return specfun::gegenbauer_ratio(4, 0.5 * (n - 2), t);
  throw std::invalid_argument("perturbed_ball: pattern degree must be 2 or 4");
}

// sum over n-subsets of |det|, for zonotope volumes
double subset_det_sum(int n, const std::vector<std::vector<double>>& gens) {
  const int m = int(gens.size());
  std::vector<int> idx(n);
  double total = 0;
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == n) {
      std::vector<double> a(std::size_t(n) * n);
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) a[std::size_t(c) * n + r] = gens[idx[c]][r];
      // LU with partial pivoting
      double det = 1;
      for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
          if (std::abs(a[std::size_t(k) * n + r]) > std::abs(a[std::size_t(k) * n + piv])) piv = r;
        if (a[std::size_t(k) * n + piv] == 0) { det = 0; break; }
        if (piv != k) {
          for (int c = 0; c < n; ++c) std::swap(a[std::size_t(c) * n + k], a[std::size_t(c) * n + piv]);
          det = -det;
        }
        det *= a[std::size_t(k) * n + k];
        for (int r = k + 1; r < n; ++r) {
          const double f = a[std::size_t(k) * n + r] / a[std::size_t(k) * n + k];
          for (int c = k; c < n; ++c) a[std::size_t(c) * n + r] -= f * a[std::size_t(c) * n + k];
        }
      }
      total += std::abs(det);
      return;
    }
    for (int i = start; i <= m - (n - pos); ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return total;
}

}  // namespace

Body make_ball(int n, double radius) {
  require_dim(n);
  if (!(radius > 0)) throw std::invalid_argument("ball: radius > 0");
  Body b;
  b.dim = n;
  b.family = Family::ball;
  b.label = "ball";
  b.params = {radius};
  b.radial = [radius](std::span<const double>) { return radius; };
  b.support = [radius](std::span<const double> x) { return radius * norm2(x); };
  const double fk = std::pow(radius, n - 1);
  b.curvature = [fk](std::span<const double>) { return fk; };
  b.convex = b.smooth = true;
  return b;
}

Body make_ellipsoid(std::vector<double> a) {
  const int n = int(a.size());
  require_dim(n);
  for (double v : a)
    if (!(v > 0)) throw std::invalid_argument("ellipsoid: semi-axes > 0");
  Body b;
  b.dim = n;
  b.family = Family::ellipsoid;
  b.label = "ellipsoid";
  b.params = a;
  b.radial = [a](std::span<const double> u) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += u[i] * u[i] / (a[i] * a[i]);
    return 1.0 / std::sqrt(s);
  };
  b.support = [a](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i] * x[i] * x[i];
    return std::sqrt(s);
  };
  double prod2 = 1;
  for (double v : a) prod2 *= v * v;
  b.curvature = [a, prod2, n](std::span<const double> u) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i] * u[i] * u[i];
    return prod2 * std::pow(s, -0.5 * (n + 1));
  };
  b.convex = b.smooth = true;
  return b;
}

Body make_lp_ball(int n, double p) {
  require_dim(n);
  if (!(p >= 1)) throw std::invalid_argument("lp_ball: p >= 1");
  if (p > 1e9 || std::isinf(p)) {
    Body b = make_cube(n, 1.0);
    b.label = "lp_ball(inf)";
    return b;
  }
  Body b;
  b.dim = n;
  b.family = Family::lp_ball;
  b.label = "lp_ball";
  b.params = {p};
  b.radial = [p](std::span<const double> u) {
    double s = 0;
    for (double v : u) s += std::pow(std::abs(v), p);
    return std::pow(s, -1.0 / p);
  };
  const double q = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  if (p == 1.0) {
    b.support = [](std::span<const double> x) {
      double m = 0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    };
  } else {
    b.support = [q](std::span<const double> x) {
      double s = 0;
      for (double v : x) s += std::pow(std::abs(v), q);
      return std::pow(s, 1.0 / q);
    };
  }
  b.convex = true;
  b.smooth = (p == 2.0);
  return b;
}

Body make_perturbed_ball(int n, double delta, int degree, int axis) {
  require_dim(n);
  if (std::abs(delta) > 0.3)
    throw std::invalid_argument("perturbed_ball: |delta| <= 0.3");
  if (axis < 0) axis = n - 1;
  if (axis >= n) throw std::invalid_argument("perturbed_ball: axis out of range");
  perturbation_pattern(n, degree, 0.0);  // validates degree
  Body b;
  b.dim = n;
  b.family = Family::perturbed_ball;
  b.label = "perturbed_ball";
  b.params = {delta, double(degree), double(axis)};
  b.radial = [n, delta, degree, axis](std::span<const double> u) {
    return 1.0 + delta * perturbation_pattern(n, degree, u[axis]);
  };
  {  // rho must stay positive on [-1,1]
    double mn = 1e300;
    for (int i = 0; i <= 200; ++i) {
      const double t = -1.0 + i / 100.0;
      mn = std::min(mn, 1.0 + delta * perturbation_pattern(n, degree, t));
    }
    if (mn <= 0) throw std::invalid_argument("perturbed_ball: rho <= 0");
  }
  b.convex = true;  // delta cap keeps low-degree patterns convex; sampled-checked in tests
  b.smooth = true;
  return b;
}

Body make_cube(int n, double s) {
  require_dim(n);
  if (!(s > 0)) throw std::invalid_argument("cube: half_side > 0");
  Body b;
  b.dim = n;
  b.family = Family::cube;
  b.label = "cube";
  b.params = {s};
  b.radial = [s](std::span<const double> u) {
    double m = 0;
    for (double v : u) m = std::max(m, std::abs(v));
    return s / m;
  };
  b.support = [s](std::span<const double> x) {
    double t = 0;
    for (double v : x) t += std::abs(v);
    return s * t;
  };
  const double area = std::pow(2.0 * s, n - 1);
  for (int i = 0; i < n; ++i)
    for (double sign : {1.0, -1.0}) {
      Facet f;
      f.normal.assign(n, 0.0);
      f.normal[i] = sign;
      f.offset = s;
      f.area = area;
      b.facets.push_back(std::move(f));
    }
  b.convex = true;
  return b;
}

Body make_polytope(int n, std::vector<Facet> facets) {
  require_dim(n);
  if (facets.empty()) throw std::invalid_argument("polytope: facets required");
  for (const auto& f : facets) {
    if (int(f.normal.size()) != n) throw std::invalid_argument("polytope: facet normal dimension");
    if (!(f.offset > 0)) throw std::invalid_argument("polytope: offsets > 0 (origin interior)");
  }
  // symmetry: every normal must have its negation with equal offset/area
  for (const auto& f : facets) {
    bool found = false;
    for (const auto& g : facets) {
      double d = 0;
      for (int c = 0; c < n; ++c) d += std::abs(f.normal[c] + g.normal[c]);
      if (d < 1e-10 && std::abs(f.offset - g.offset) < 1e-10 &&
          std::abs(f.area - g.area) < 1e-10) {
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("polytope: facet set not origin-symmetric");
  }
  Body b;
  b.dim = n;
  b.family = Family::polytope;
  b.label = "polytope";
  auto fs = std::make_shared<std::vector<Facet>>(facets);
  b.radial = [fs](std::span<const double> u) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : *fs) {
      const double d = dot(u, std::span<const double>(f.normal));
      if (d > 1e-14) best = std::min(best, f.offset / d);
    }
    return best;
  };
  b.facets = std::move(facets);
  b.convex = true;
  return b;
}

Body make_polytope_vertices(int n, std::vector<std::vector<double>> vertices) {
  require_dim(n);
  if (vertices.empty()) throw std::invalid_argument("polytope: vertices required");
  for (const auto& v : vertices)
    if (int(v.size()) != n) throw std::invalid_argument("polytope: vertex dimension");
  Body b;
  b.dim = n;
  b.family = Family::polytope;
  b.label = "polytope-v";
  auto vs = std::make_shared<std::vector<std::vector<double>>>(std::move(vertices));
  b.support = [vs](std::span<const double> x) {
    double m = 0;
    for (const auto& v : *vs) m = std::max(m, std::abs(dot(x, std::span<const double>(v))));
    return m;
  };
  b.radial = SupportRadial(n, b.support);
  b.convex = true;
  return b;
}

Body make_zonotope(int n, std::vector<std::vector<double>> generators) {
  require_dim(n);
  if (int(generators.size()) < n) throw std::invalid_argument("zonotope: need >= n generators");
  for (const auto& z : generators)
    if (int(z.size()) != n) throw std::invalid_argument("zonotope: generator dimension");
  Body b;
  b.dim = n;
  b.family = Family::zonotope;
  b.label = "zonotope";
  auto zs = std::make_shared<std::vector<std::vector<double>>>(std::move(generators));
  b.support = [zs](std::span<const double> x) {
    double s = 0;
    for (const auto& z : *zs) s += std::abs(dot(x, std::span<const double>(z)));
    return s;
  };
  b.radial = SupportRadial(n, b.support);
  for (const auto& z : *zs)
    b.params.insert(b.params.end(), z.begin(), z.end());
  b.convex = true;
  return b;
}

double volume(const Body& K, const sphere::SphereGrid& grid) {
  if (grid.dim != K.dim) throw std::invalid_argument("volume: dimension mismatch");
  double sum = 0, comp = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = K.radial(grid.node(i));
    const double x = grid.weights[i] * std::pow(r, K.dim) - comp;
    const double t = sum + x;
    comp = (t - sum) - x;
    sum = t;
  }
  return sum / K.dim;
}

std::optional<double> analytic_volume(const Body& K) {
  const int n = K.dim;
  switch (K.family) {
    case Family::ball:
      return unit_ball_volume(n) * std::pow(K.params[0], n);
    case Family::ellipsoid: {
      double p = 1;
      for (double a : K.params) p *= a;
      return unit_ball_volume(n) * p;
    }
    case Family::cube:
      return std::pow(2.0 * K.params[0], n);
    case Family::lp_ball: {
      const double p = K.params[0];
      return std::exp(n * (std::log(2.0) + specfun::gamma_ln(1.0 + 1.0 / p)) -
                      specfun::gamma_ln(1.0 + double(n) / p));
    }
    case Family::perturbed_ball: {
      const double delta = K.params[0];
      const int degree = int(K.params[1]);
      std::vector<double> t, w;
      sphere::gauss_jacobi(80, 0.5 * (n - 3), 0.5 * (n - 3), t, w);
      double s = 0;
      for (std::size_t i = 0; i < t.size(); ++i)
        s += w[i] * std::pow(1.0 + delta * perturbation_pattern(n, degree, t[i]), n);
      const double ring = n == 2 ? 2.0 : specfun::sphere_surface_area(n - 1);
      return ring * s / n;
    }
    case Family::zonotope: {
      std::vector<std::vector<double>> gens;
      for (std::size_t i = 0; i + n <= K.params.size(); i += n)
        gens.emplace_back(K.params.begin() + i, K.params.begin() + i + n);
      return std::pow(2.0, n) * subset_det_sum(n, gens);
    }
    case Family::polytope:
      if (K.has_facets() && K.facets[0].area > 0) {
        double s = 0;
        for (const auto& f : K.facets) s += f.offset * f.area;
        return s / n;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> analytic_section(const Body& K, std::span<const double> xi) {
  const int n = K.dim;
  if (K.family == Family::ball)
    return unit_ball_volume(n - 1) * std::pow(K.params[0], n - 1);
  if (K.family == Family::ellipsoid) {
    // |E cap xi^perp| = omega_{n-1} (prod a_i) / |A xi| with A = diag(a)
    double p = 1, h2 = 0;
    for (int i = 0; i < n; ++i) {
      p *= K.params[i];
      h2 += K.params[i] * K.params[i] * xi[i] * xi[i];
    }
    return unit_ball_volume(n - 1) * p / std::sqrt(h2);
  }
  return std::nullopt;
}

std::optional<double> analytic_projection(const Body& K, std::span<const double> xi) {
  const int n = K.dim;
  if (K.family == Family::ball)
    return unit_ball_volume(n - 1) * std::pow(K.params[0], n - 1);
  if (K.family == Family::ellipsoid) {
    // |E | xi^perp| = omega_{n-1} (prod a_i) |A^{-1} xi| with A = diag(a)
    double p = 1, q = 0;
    for (int i = 0; i < n; ++i) {
      p *= K.params[i];
      q += xi[i] * xi[i] / (K.params[i] * K.params[i]);
    }
    return unit_ball_volume(n - 1) * p * std::sqrt(q);
  }
  if (K.has_facets() && K.facets[0].area > 0) {
    double s = 0;
    for (const auto& f : K.facets)
      s += std::abs(dot(xi, std::span<const double>(f.normal))) * f.area;
    return 0.5 * s;
  }
  if (K.family == Family::zonotope) {
    // projected generators span the shadow: 2^{n-1} sum over (n-1)-subsets
    // of |det(z_S, xi)|
    std::vector<std::vector<double>> cols;
    for (std::size_t i = 0; i + n <= K.params.size(); i += n)
      cols.emplace_back(K.params.begin() + i, K.params.begin() + i + n);
    const int m = int(cols.size());
    std::vector<int> idx(n - 1);
    double total = 0;
    std::function<void(int, int)> rec = [&](int pos, int start) {
      if (pos == n - 1) {
        std::vector<std::vector<double>> mat;
        for (int c = 0; c < n - 1; ++c) mat.push_back(cols[idx[c]]);
        mat.emplace_back(xi.begin(), xi.end());
        total += subset_det_sum(n, mat);  // single n-subset: plain |det|
        return;
      }
      for (int i = start; i <= m - (n - 1 - pos); ++i) {
        idx[pos] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
    return std::pow(2.0, n - 1) * total;
  }
  return std::nullopt;
}

namespace {

// local pattern-search extremum refinement of rho from a starting direction
double refine_radial(const Body& K, std::span<const double> start, bool maximize) {
  const int n = K.dim;
  std::vector<double> x(start.begin(), start.end());
  double best = K.radial(std::span<const double>(x));
  double step = 0.1;
  std::vector<double> cand(n);
  const double sgn = maximize ? 1.0 : -1.0;
  while (step > 1e-8) {
    bool improved = false;
    for (int c = 0; c < n; ++c)
      for (double s : {step, -step}) {
        cand = x;
        cand[c] += s;
        const double nm = norm2(cand);
        for (auto& v : cand) v /= nm;
        const double val = K.radial(std::span<const double>(cand));
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

}  // namespace

RadiusData normalized_radii(const Body& K, const sphere::SphereGrid& grid) {
  double rmin, rmax;
  switch (K.family) {
    case Family::ball:
      rmin = rmax = K.params[0];
      break;
    case Family::ellipsoid:
      rmin = *std::min_element(K.params.begin(), K.params.end());
      rmax = *std::max_element(K.params.begin(), K.params.end());
      break;
    case Family::cube:
      rmin = K.params[0];
      rmax = K.params[0] * std::sqrt(double(K.dim));
      break;
    case Family::lp_ball: {
      const double diag = std::pow(double(K.dim), 0.5 - 1.0 / K.params[0]);
      rmin = std::min(1.0, diag);
      rmax = std::max(1.0, diag);
      break;
    }
    case Family::perturbed_ball: {
      const double delta = K.params[0];
      const int degree = int(K.params[1]);
      rmin = 1e300;
      rmax = -1e300;
      for (int i = 0; i <= 2000; ++i) {
        const double t = -1.0 + i / 1000.0;
        const double r = 1.0 + delta * perturbation_pattern(K.dim, degree, t);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
      }
      break;
    }
    default: {
      std::size_t imin = 0, imax = 0;
      double vmin = 1e300, vmax = -1e300;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = K.radial(grid.node(i));
        if (r < vmin) { vmin = r; imin = i; }
        if (r > vmax) { vmax = r; imax = i; }
      }
      rmin = refine_radial(K, grid.node(imin), false);
      rmax = refine_radial(K, grid.node(imax), true);
    }
  }
  const double vol = analytic_volume(K).value_or(volume(K, grid));
  const double s = std::pow(vol, 1.0 / K.dim);
  return {rmin / s, rmax / s};
}

Body scaled(const Body& K, double t) {
  if (!(t > 0)) throw std::invalid_argument("scaled: t > 0");
  switch (K.family) {
    case Family::ball:
      return make_ball(K.dim, t * K.params[0]);
    case Family::cube:
      return make_cube(K.dim, t * K.params[0]);
    case Family::ellipsoid: {
      std::vector<double> a = K.params;
      for (auto& v : a) v *= t;
      return make_ellipsoid(a);
    }
    default: {
      Body b = K;
      b.label += "*" + std::to_string(t);
      auto r = K.radial;
      b.radial = [r, t](std::span<const double> u) { return t * r(u); };
      if (K.support) {
        auto h = K.support;
        b.support = [h, t](std::span<const double> x) { return t * h(x); };
      }
      if (K.curvature) {
        auto f = K.curvature;
        const double fac = std::pow(t, K.dim - 1);
        b.curvature = [f, fac](std::span<const double> u) { return fac * f(u); };
      }
      const double afac = std::pow(t, K.dim - 1);
      for (auto& f : b.facets) {
        f.offset *= t;
        f.area *= afac;
      }
      if (K.family == Family::zonotope) {
        // determinant-sum volume stays valid with rescaled generators
        for (auto& v : b.params) v *= t;
      } else {
        // closed forms keyed on params no longer apply
        b.family = Family::polytope;
        b.params.clear();
      }
      return b;
    }
  }
}

sphere::SphericalFunction sample_radial_power(
    const Body& K, std::shared_ptr<const sphere::SphereGrid> grid, double power) {
  auto rho = K.radial;
  return sphere::sample(
      grid, [rho, power](std::span<const double> u) { return std::pow(rho(u), power); });
}

double sampled_convexity_margin(const Body& K, unsigned seed, int nsections) {
  const int n = K.dim;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int M = 256;
  const double h = 2.0 * kPi / M;
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> e1(n), e2(n), u(n), r(M);
  for (int s = 0; s < nsections; ++s) {
    for (auto& v : e1) v = gauss(rng);
    for (auto& v : e2) v = gauss(rng);
    double n1 = norm2(e1);
    for (auto& v : e1) v /= n1;
    const double d = dot(std::span<const double>(e1), std::span<const double>(e2));
    for (int c = 0; c < n; ++c) e2[c] -= d * e1[c];
    const double n2 = norm2(e2);
    for (auto& v : e2) v /= n2;
    for (int i = 0; i < M; ++i) {
      const double phi = i * h;
      for (int c = 0; c < n; ++c) u[c] = std::cos(phi) * e1[c] + std::sin(phi) * e2[c];
      r[i] = K.radial(std::span<const double>(u));
    }
    for (int i = 0; i < M; ++i) {
      const double rp = (r[(i + 1) % M] - r[(i + M - 1) % M]) / (2 * h);
      const double rpp = (r[(i + 1) % M] - 2 * r[i] + r[(i + M - 1) % M]) / (h * h);
      worst = std::min(worst, r[i] * r[i] + 2 * rp * rp - r[i] * rpp);
    }
  }
  return worst;
}

}  // namespace gtomo::bodies

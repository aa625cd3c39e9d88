#include "gtomo/sphere.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gtomo/specfun.hpp"

namespace gtomo::sphere {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct KahanSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double dot(std::span<const double> a, const double* b, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double SphereGrid::weight_sum() const {
  KahanSum s;
  for (double w : weights) s.add(w);
  return s.sum;
}

int default_resolution(int n) {
  switch (n) {
    case 2: return 64;
    case 3: return 24;
    case 4: return 17;
    case 5: return 10;
    case 6: return 8;
    default: throw std::invalid_argument("default_resolution: dimension must be in [2,6]");
  }
}

void gauss_jacobi(int npts, double a, double b, std::vector<double>& x,
                  std::vector<double>& w) {
  if (npts < 1) throw std::invalid_argument("gauss_jacobi: npts >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npts, npts);
  const double apb = a + b;
  for (int k = 0; k < npts; ++k) {
    double diag;
    if (k == 0 && apb == -1.0) {
      diag = (b - a);
    } else {
      const double den = (2.0 * k + apb) * (2.0 * k + apb + 2.0);
      diag = den == 0.0 ? 0.0 : (b * b - a * a) / den;
    }
    J(k, k) = diag;
    if (k > 0) {
      double num, den;
      if (k == 1) {
        // the (k + apb)/(2k + apb - 1) factor cancels at k = 1; the raw form
        // is 0/0 for the Chebyshev case a + b = -1
        num = 4.0 * (1.0 + a) * (1.0 + b);
        den = (2.0 + apb) * (2.0 + apb) * (3.0 + apb);
      } else {
        num = 4.0 * k * (k + a) * (k + b) * (k + apb);
        den = (2.0 * k + apb) * (2.0 * k + apb) *
              (2.0 * k + apb + 1.0) * (2.0 * k + apb - 1.0);
      }
      const double off = std::sqrt(num / den);
      J(k, k - 1) = off;
      J(k - 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::exp((apb + 1.0) * std::log(2.0) +
                              specfun::gamma_ln(a + 1.0) +
                              specfun::gamma_ln(b + 1.0) -
                              specfun::gamma_ln(apb + 2.0));
  x.resize(npts);
  w.resize(npts);
  for (int i = 0; i < npts; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
  // eigenvalues come sorted; enforce exact +/- symmetry when a == b
  if (a == b) {
    for (int i = 0; i < npts / 2; ++i) {
      const int j = npts - 1 - i;
      const double t = 0.5 * (x[j] - x[i]);
      x[i] = -t;
      x[j] = t;
      const double wm = 0.5 * (w[i] + w[j]);
      w[i] = wm;
      w[j] = wm;
    }
    if (npts % 2 == 1) x[npts / 2] = 0.0;
  }
}

SphereGrid build_grid(int n, int resolution) {
  if (n < 2 || n > 6) throw std::invalid_argument("build_grid: dimension must be in [2,6]");
  if (resolution < 4) throw std::invalid_argument("build_grid: resolution >= 4");

  SphereGrid g;
  g.dim = n;
  g.resolution = resolution;

  if (n == 2) {
    const int R = resolution;
    g.nodes.resize(std::size_t(4) * R);
    g.weights.assign(std::size_t(2) * R, kPi / R);
    for (int j = 0; j < R; ++j) {
      const double phi = kPi * (j + 0.5) / R;
      g.nodes[2 * j] = std::cos(phi);
      g.nodes[2 * j + 1] = std::sin(phi);
      g.nodes[2 * (j + R)] = -std::cos(phi);
      g.nodes[2 * (j + R) + 1] = -std::sin(phi);
    }
    return g;
  }

  const SphereGrid lower = build_grid(n - 1, resolution);
  std::vector<double> t, wt;
  gauss_jacobi(resolution, 0.5 * (n - 3), 0.5 * (n - 3), t, wt);

  const std::size_t M = lower.size();
  const std::size_t half_lower = M / 2;
  // half set: all (t > 0) x lower, plus (t == 0) x first half of lower
  std::vector<std::pair<double, double>> pos;  // (t, w) with t > 0
  bool has_zero = false;
  double w_zero = 0.0;
  for (int i = 0; i < resolution; ++i) {
    if (t[i] > 0.0) pos.emplace_back(t[i], wt[i]);
    if (t[i] == 0.0) {
      has_zero = true;
      w_zero = wt[i];
    }
  }
  const std::size_t half = pos.size() * M + (has_zero ? half_lower : 0);
  const std::size_t N = 2 * half;
  g.nodes.resize(N * n);
  g.weights.resize(N);

  std::size_t idx = 0;
  auto emit = [&](double tv, double twt, std::span<const double> v, double vw) {
    const double s = std::sqrt(std::max(0.0, 1.0 - tv * tv));
    double* out = g.nodes.data() + idx * n;
    for (int c = 0; c < n - 1; ++c) out[c] = s * v[c];
    out[n - 1] = tv;
    g.weights[idx] = twt * vw;
    // antipode
    double* out2 = g.nodes.data() + (idx + half) * n;
    for (int c = 0; c < n; ++c) out2[c] = -out[c];
    g.weights[idx + half] = twt * vw;
    ++idx;
  };
  for (const auto& [tv, twt] : pos)
    for (std::size_t j = 0; j < M; ++j)
      emit(tv, twt, lower.node(j), lower.weights[j]);
  if (has_zero)
    for (std::size_t j = 0; j < half_lower; ++j)
      emit(0.0, w_zero, lower.node(j), lower.weights[j]);
  return g;
}

std::shared_ptr<const SphereGrid> make_grid(int n, int resolution) {
  if (resolution == 0) resolution = default_resolution(n);
  return std::make_shared<const SphereGrid>(build_grid(n, resolution));
}

SphericalFunction sample(std::shared_ptr<const SphereGrid> grid,
                         const std::function<double(std::span<const double>)>& f,
                         bool keep_evaluator) {
  SphericalFunction out;
  out.grid = grid;
  out.values.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) out.values[i] = f(grid->node(i));
  if (keep_evaluator) out.evaluator = f;
  return out;
}

double integrate(const SphericalFunction& f) {
  KahanSum s;
  const auto& g = *f.grid;
  for (std::size_t i = 0; i < g.size(); ++i) s.add(g.weights[i] * f.values[i]);
  return s.sum;
}

double evenness_defect(const SphericalFunction& f) {
  const std::size_t half = f.grid->size() / 2;
  double d = 0;
  for (std::size_t i = 0; i < half; ++i)
    d = std::max(d, std::abs(f.values[i] - f.values[i + half]));
  return d;
}

double sup_norm(const SphericalFunction& f) {
  double m = 0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_value(const SphericalFunction& f, std::size_t* argmax) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.values.size(); ++i)
    if (f.values[i] > f.values[best]) best = i;
  if (argmax) *argmax = best;
  return f.values[best];
}

double min_value(const SphericalFunction& f, std::size_t* argmin) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.values.size(); ++i)
    if (f.values[i] < f.values[best]) best = i;
  if (argmin) *argmin = best;
  return f.values[best];
}

void perp_basis(std::span<const double> xi, std::vector<double>& basis) {
  const int n = int(xi.size());
  basis.assign(std::size_t(n) * (n - 1), 0.0);
  // Householder H = I - 2 w w^T / |w|^2 with w = xi - e_n maps e_n -> xi;
  // its first n-1 columns span xi-perp.
  std::vector<double> w(xi.begin(), xi.end());
  w[n - 1] -= 1.0;
  double nw2 = 0;
  for (double v : w) nw2 += v * v;
  if (nw2 < 1e-28) {
    for (int c = 0; c < n - 1; ++c) basis[std::size_t(c) * n + c] = 1.0;
    return;
  }
  for (int c = 0; c < n - 1; ++c) {
    double* col = basis.data() + std::size_t(c) * n;
    for (int r = 0; r < n; ++r) col[r] = (r == c ? 1.0 : 0.0) - 2.0 * w[r] * w[c] / nw2;
  }
}

SubsphereQuadrature subsphere_quadrature(std::span<const double> xi,
                                         int resolution) {
  const int n = int(xi.size());
  if (n < 2 || n > 6) throw std::invalid_argument("subsphere_quadrature: dimension in [2,6]");
  SubsphereQuadrature q;
  q.ambient_dim = n;

  std::vector<double> basis;
  perp_basis(xi, basis);

  if (n == 2) {
    // S^0: the two unit vectors orthogonal to xi, weight 1 each
    q.nodes = {basis[0], basis[1], -basis[0], -basis[1]};
    q.weights = {1.0, 1.0};
    return q;
  }

  if (resolution == 0) resolution = default_resolution(n - 1);
  const SphereGrid sub = build_grid(n - 1, resolution);
  q.nodes.resize(sub.size() * n);
  q.weights = sub.weights;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const auto v = sub.node(i);
    double* out = q.nodes.data() + i * n;
    for (int r = 0; r < n; ++r) {
      double s = 0;
      for (int c = 0; c < n - 1; ++c) s += basis[std::size_t(c) * n + r] * v[c];
      out[r] = s;
    }
  }
  return q;
}

double MultiplierSequence::at(int k) const {
  if (k < 0 || k % 2 != 0 || k > max_degree())
    throw std::invalid_argument("MultiplierSequence::at: even k within range required");
  return entries[std::size_t(k) / 2];
}

ZonalKernel::ZonalKernel(int dim, std::span<const double> even_coefs) {
  const int L = 2 * (int(even_coefs.size()) - 1);
  const double nu = 0.5 * (dim - 2);
  const int M = L / 2 + 1;
  // sample K at Chebyshev points of s = 2t^2 - 1, then DCT
  std::vector<double> samples(M);
  for (int j = 0; j < M; ++j) {
    const double s = std::cos(kPi * (j + 0.5) / M);
    const double t = std::sqrt(0.5 * (1.0 + s));
    double acc = 0;
    for (std::size_t i = 0; i < even_coefs.size(); ++i)
      if (even_coefs[i] != 0.0)
        acc += even_coefs[i] * specfun::gegenbauer_ratio(2 * int(i), nu, t);
    samples[j] = acc;
  }
  cheb_.assign(M, 0.0);
  for (int m = 0; m < M; ++m) {
    double acc = 0;
    for (int j = 0; j < M; ++j)
      acc += samples[j] * std::cos(kPi * m * (j + 0.5) / M);
    cheb_[m] = (m == 0 ? 1.0 : 2.0) * acc / M;
  }
}

double ZonalKernel::operator()(double t) const {
  const double s = 2.0 * t * t - 1.0;
  // Clenshaw
  double b1 = 0, b2 = 0;
  for (int m = int(cheb_.size()) - 1; m >= 1; --m) {
    const double b0 = 2.0 * s * b1 - b2 + cheb_[m];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + cheb_[0];
}

namespace {

// out(p) = sum_j w_j K(<p, u_j>) f_j over the grid, folded onto antipodal
// pairs (valid because the kernel is even).
void zonal_pass(const SphericalFunction& f, const ZonalKernel& kernel,
                std::span<const double> points, std::vector<double>& out) {
  const auto& g = *f.grid;
  const int n = g.dim;
  const std::size_t half = g.size() / 2;
  const std::size_t npts = points.size() / n;
  out.resize(npts);
  for (std::size_t p = 0; p < npts; ++p) {
    const double* xi = points.data() + p * n;
    KahanSum acc;
    for (std::size_t j = 0; j < half; ++j) {
      const double* u = g.nodes.data() + j * n;
      double t = 0;
      for (int c = 0; c < n; ++c) t += xi[c] * u[c];
      t = std::clamp(t, -1.0, 1.0);
      acc.add(g.weights[j] * (f.values[j] + f.values[j + half]) * kernel(t));
    }
    out[p] = acc.sum;
  }
}

std::vector<double> kernel_coefs(const SphereGrid& g, const MultiplierSequence& m) {
  const double area = specfun::sphere_surface_area(g.dim);
  std::vector<double> coefs(m.entries.size());
  for (std::size_t i = 0; i < coefs.size(); ++i)
    coefs[i] = m.entries[i] * specfun::harmonic_dimension(g.dim, 2 * int(i)) / area;
  return coefs;
}

}  // namespace

SphericalFunction apply_multiplier(const SphericalFunction& f,
                                   const MultiplierSequence& m) {
  if (m.dim != f.grid->dim)
    throw std::invalid_argument("apply_multiplier: dimension mismatch");
  const auto& g = *f.grid;
  const std::size_t half = g.size() / 2;
  const ZonalKernel kernel(g.dim, kernel_coefs(g, m));
  std::vector<double> half_out;
  zonal_pass(f, kernel,
             std::span<const double>(g.nodes.data(), half * g.dim), half_out);
  SphericalFunction out;
  out.grid = f.grid;
  out.values.resize(g.size());
  for (std::size_t i = 0; i < half; ++i) {
    out.values[i] = half_out[i];
    out.values[i + half] = half_out[i];
  }
  return out;
}

std::vector<double> apply_multiplier_at(const SphericalFunction& f,
                                        const MultiplierSequence& m,
                                        std::span<const double> points) {
  if (m.dim != f.grid->dim)
    throw std::invalid_argument("apply_multiplier_at: dimension mismatch");
  const ZonalKernel kernel(f.grid->dim, kernel_coefs(*f.grid, m));
  std::vector<double> out;
  zonal_pass(f, kernel, points, out);
  return out;
}

SphericalFunction project_degree(const SphericalFunction& f, int k) {
  if (k < 0 || k % 2 != 0)
    throw std::invalid_argument("project_degree: even degree required");
  MultiplierSequence m;
  m.dim = f.grid->dim;
  m.entries.assign(std::size_t(k) / 2 + 1, 0.0);
  m.entries.back() = 1.0;
  m.descriptor = "degree-projector";
  return apply_multiplier(f, m);
}

std::vector<double> cesaro_factors(int dim, int lmax) {
  const double delta = dim - 1;
  auto lnA = [&](double m) {
    return specfun::gamma_ln(m + delta + 1) - specfun::gamma_ln(m + 1) -
           specfun::gamma_ln(delta + 1);
  };
  std::vector<double> s;
  for (int k = 0; k <= lmax; k += 2) s.push_back(std::exp(lnA(lmax - k) - lnA(lmax)));
  return s;
}

}  // namespace gtomo::sphere

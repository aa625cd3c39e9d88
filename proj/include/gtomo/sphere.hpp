#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gtomo::sphere {

/// Product quadrature grid on S^{n-1}, n = 2..6.
///
/// Layout invariant: node(i + size()/2) == -node(i) with equal weights, so
/// even integrands can be folded onto the first half.
struct SphereGrid {
  int dim = 0;
  int resolution = 0;
  std::vector<double> nodes;    // size() * dim, row-major
  std::vector<double> weights;  // size()

  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * dim, static_cast<std::size_t>(dim)};
  }
  double weight_sum() const;
};

/// Per-dimension default resolution, sized so that products of two
/// band-limited (L_max = 16) functions integrate accurately at desk scale.
int default_resolution(int n);

/// Gauss nodes/weights for the weight (1-x)^a (1+x)^b on [-1,1]
/// (Golub-Welsch on the Jacobi recurrence).
void gauss_jacobi(int npts, double a, double b, std::vector<double>& x,
                  std::vector<double>& w);

SphereGrid build_grid(int n, int resolution);
std::shared_ptr<const SphereGrid> make_grid(int n, int resolution = 0);

/// Even function on a SphereGrid, sampled at the nodes; the analytic
/// evaluator is optional and is required only by direct-route transforms.
struct SphericalFunction {
  std::shared_ptr<const SphereGrid> grid;
  std::vector<double> values;
  std::function<double(std::span<const double>)> evaluator;  // may be empty

  double operator[](std::size_t i) const { return values[i]; }
};

SphericalFunction sample(std::shared_ptr<const SphereGrid> grid,
                         const std::function<double(std::span<const double>)>& f,
                         bool keep_evaluator = true);

/// Compensated (Kahan) sum of w_i f_i in fixed node order.
double integrate(const SphericalFunction& f);

/// max_i |f(u_i) - f(-u_i)|
double evenness_defect(const SphericalFunction& f);
double sup_norm(const SphericalFunction& f);
double max_value(const SphericalFunction& f, std::size_t* argmax = nullptr);
double min_value(const SphericalFunction& f, std::size_t* argmin = nullptr);

/// Quadrature on the great subsphere S^{n-1} \cap xi-perp, embedded via the
/// Householder reflection mapping e_n to xi. Sum of weights = |S^{n-2}|.
struct SubsphereQuadrature {
  int ambient_dim = 0;
  std::vector<double> nodes;  // count * ambient_dim
  std::vector<double> weights;
  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * ambient_dim,
            static_cast<std::size_t>(ambient_dim)};
  }
};

SubsphereQuadrature subsphere_quadrature(std::span<const double> xi,
                                         int resolution = 0);

/// Orthonormal basis of xi-perp (the first n-1 columns of the Householder
/// reflection exchanging e_n and xi), written column-major into basis.
void perp_basis(std::span<const double> xi, std::vector<double>& basis);

/// Diagonal operator in spherical harmonics: one scalar per even degree
/// k = 0, 2, ..., 2*(entries.size()-1). Odd degrees are implicitly zero.
struct MultiplierSequence {
  int dim = 0;
  std::vector<double> entries;
  std::string descriptor;

  int max_degree() const { return 2 * (int(entries.size()) - 1); }
  double at(int k) const;  // k even, 0 <= k <= max_degree
};

/// Zonal kernel K(t) = sum over even k of coef_k * C_k^{(nu)}(t)/C_k^{(nu)}(1),
/// refit to an even Chebyshev series for fast evaluation.
class ZonalKernel {
 public:
  ZonalKernel(int dim, std::span<const double> even_coefs);
  double operator()(double t) const;

 private:
  std::vector<double> cheb_;  // coefficients of T_m(2t^2 - 1)
};

/// Funk-Hecke projector onto the degree-k harmonic space (k even).
SphericalFunction project_degree(const SphericalFunction& f, int k);

/// sum_k m_k P_k f, truncated at the sequence's max degree.
SphericalFunction apply_multiplier(const SphericalFunction& f,
                                   const MultiplierSequence& m);

/// Cesaro (C, dim-1) convergence factors over even degrees 0..lmax. The
/// summability order keeps the truncated synthesis kernel nonnegative
/// (positive spherical convolution), so sign tests on functions with slowly
/// converging expansions are not corrupted by Gibbs lobes.
std::vector<double> cesaro_factors(int dim, int lmax);

/// Same operator evaluated at arbitrary unit vectors (npts * dim, row-major).
std::vector<double> apply_multiplier_at(const SphericalFunction& f,
                                        const MultiplierSequence& m,
                                        std::span<const double> points);

}  // namespace gtomo::sphere

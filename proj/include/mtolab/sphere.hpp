#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mtolab/quadrature.hpp"

namespace mto::sphere {

/// Zonal calculus on S^n in the variable x = cos(theta).
///
/// The basis e_k is proportional to C_k^{(n-1)/2}(x) (Chebyshev T_k for n = 1) and is
/// orthonormal for the mean inner product, i.e. the sphere average of e_j e_k is delta_jk.
/// Normalization constants are measured with the context's own Gauss rule.
class SphereContext {
 public:
  /// Requires n >= 1, K >= 1, M >= 2K + 2.
  static std::shared_ptr<const SphereContext> make(int n, int K, int M);

  int dimension() const noexcept { return n_; }
  int truncation() const noexcept { return K_; }
  int quadrature_size() const noexcept { return static_cast<int>(rule_->size()); }
  int basis_size() const noexcept { return K_ + 1; }
  double gegenbauer_lambda() const noexcept { return 0.5 * (n_ - 1); }
  /// Jacobi exponent (n - 2)/2 of the measure sin^{n-1}(theta) d(theta) in x.
  double weight_exponent() const noexcept { return 0.5 * (n_ - 2); }

  const QuadratureRule& rule() const noexcept { return *rule_; }
  std::span<const double> norm_table() const noexcept { return norms_; }

  /// e_0(x) .. e_K(x).
  void basis_values(double x, std::span<double> out) const;
  std::vector<double> basis_values(double x) const;

  /// Basis at the context's own nodes, row-major (node, degree).
  double basis_at_node(std::size_t node, std::size_t degree) const {
    return node_basis_[node * static_cast<std::size_t>(basis_size()) + degree];
  }

 private:
  SphereContext(int n, int K, std::shared_ptr<const QuadratureRule> rule);

  int n_;
  int K_;
  std::shared_ptr<const QuadratureRule> rule_;
  std::vector<double> norms_;
  std::vector<double> node_basis_;
};

using ContextPtr = std::shared_ptr<const SphereContext>;

/// Coefficients c_0..c_K of a zonal function in the orthonormal basis.
class ZonalField {
 public:
  ZonalField(ContextPtr ctx, std::vector<double> coeffs);

  static ZonalField zero(ContextPtr ctx);
  static ZonalField constant(ContextPtr ctx, double value);
  static ZonalField mode(ContextPtr ctx, int k, double amplitude);

  const ContextPtr& context() const noexcept { return ctx_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::vector<double>& mutable_coeffs() noexcept { return coeffs_; }
  double operator[](std::size_t k) const { return coeffs_[k]; }

  /// Sphere average; e_0 == 1 so this is c_0.
  double mean() const { return coeffs_[0]; }
  /// Mean square by Parseval.
  double mean_square() const;

  /// Pointwise value at x = cos(theta).
  double value(double x) const;

 private:
  ContextPtr ctx_;
  std::vector<double> coeffs_;
};

/// Operator eigenvalues keyed by degree k.
struct SpectrumDiagonal {
  ContextPtr ctx;
  std::vector<double> eigenvalues;
  std::string label;
};

/// Coefficients from samples at the context's quadrature nodes.
ZonalField analyze(const ContextPtr& ctx, std::span<const double> node_values);

/// Degree-K projection of an arbitrary function of x, sampled on a rule of twice the context size.
ZonalField project(const ContextPtr& ctx, const std::function<double(double)>& f);

std::vector<double> synthesize(const ZonalField& field, std::span<const double> nodes);
/// Values at the context's own quadrature nodes.
std::vector<double> synthesize_at_nodes(const ZonalField& field);

/// Normalized average of samples at the context's quadrature nodes.
double mean_integral(const SphereContext& ctx, std::span<const double> node_values);

SpectrumDiagonal spectrum_P(const ContextPtr& ctx, double gamma);
SpectrumDiagonal spectrum_P_endpoint(const ContextPtr& ctx);
SpectrumDiagonal spectrum_B(const ContextPtr& ctx);

ZonalField apply_diagonal(const ZonalField& field, const SpectrumDiagonal& spectrum);
double quadratic_form(const ZonalField& field, const SpectrumDiagonal& spectrum);

/// Y(n, gamma) = Gamma(n/2 + gamma) / Gamma(n/2 - gamma).
double sharp_sobolev_constant(int n, double gamma);

/// Result of an adaptively refined sphere average of exp(g(x)).
struct AdaptiveMean {
  double log_mean = 0.0;  // ln of the normalized average
  int points = 0;         // size of the finest rule used
  double last_relative_change = 0.0;
  bool capped = false;    // refinement stopped at the point cap without meeting the tolerance
};

struct AdaptiveOptions {
  double relative_tolerance = 1e-10;
  int max_points = 1 << 14;
};

/// ln of the sphere average of exp(g(x)), computed with a max-shift so large exponents do not
/// overflow. Starts at 4K Gauss points and doubles until the average moves by less than the
/// relative tolerance.
AdaptiveMean adaptive_log_mean_exp(const SphereContext& ctx,
                                   const std::function<double(double)>& log_integrand,
                                   const AdaptiveOptions& options = {});

/// max |<e_i, e_j> - delta_ij| over the basis, measured by the context's rule.
double gram_deviation(const SphereContext& ctx);

}  // namespace mto::sphere

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtolab/sphere.hpp"

namespace mto::extremal {

/// R(v) = avg v P_gamma v / (avg |v|^p)^{2/p}, p = 2n/(n - 2gamma), over degree-K zonal fields.
/// All integrals use one fixed Gauss rule, large enough to be exact when p is an even integer.
class QuotientEvaluator {
 public:
  QuotientEvaluator(sphere::ContextPtr ctx, double gamma);

  double exponent() const noexcept { return p_; }
  double sharp_constant() const noexcept { return sharp_; }
  int quadrature_size() const noexcept { return static_cast<int>(nodes_); }

  double lp_mean(std::span<const double> coeffs) const;  // avg |v|^p
  double value(std::span<const double> coeffs) const;
  /// Returns R and writes dR/dc into `gradient`.
  double value_and_gradient(std::span<const double> coeffs, std::span<double> gradient) const;

 private:
  sphere::ContextPtr ctx_;
  double gamma_;
  double p_;
  double sharp_;
  std::vector<double> eigen_;
  std::size_t nodes_ = 0;
  std::vector<double> weights_;  // normalized to sum 1
  std::vector<double> basis_;    // (node, degree)
};

struct OptimizerOptions {
  int max_iterations = 5000;
  double relative_tolerance = 1e-12;
  int starts = 5;
  std::uint64_t seed = 1;
  double armijo = 1e-4;
};

struct OptimizerReport {
  int n = 0;
  double gamma = 0.0;
  int K = 0;
  int iterations = 0;
  double final_quotient = 0.0;
  double sharp_constant = 0.0;
  double gap = 0.0;  // final_quotient - Y(n, gamma)
  std::vector<double> trace;
  std::vector<double> argmin;
  std::string termination;  // "converged", "stationary", "max_iterations", "line_search_failed"
  std::uint64_t seed = 0;   // seed of the start that produced this report
};

/// Gradient descent on R with Armijo backtracking; v is rescaled to avg |v|^p = 1 after every step.
OptimizerReport minimize_quotient(double gamma, const sphere::ZonalField& init, const OptimizerOptions& options = {});

/// Best of `options.starts` runs from random smooth initial fields seeded seed, seed + 1, ...
/// Runs execute concurrently.
OptimizerReport minimize_quotient_multistart(const sphere::ContextPtr& ctx, double gamma,
                                             const OptimizerOptions& options = {});

struct ConformalFactor {
  sphere::ZonalField field;
  double tail_fraction = 0.0;  // 1 - (sum c_k^2) / avg v_t^2
  bool truncation_warning = false;
};

/// v_t = (cosh t + sinh t cos(theta))^{-(n - 2gamma)/2}, projected to degree K.
ConformalFactor conformal_factor_field(const sphere::ContextPtr& ctx, double t, double gamma);

}  // namespace mto::extremal

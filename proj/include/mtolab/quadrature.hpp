#pragma once

#include <memory>
#include <span>
#include <vector>

namespace mto {

/// Gauss rule for the weight (1 - x)^alpha (1 + x)^beta on [-1, 1].
struct QuadratureRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;    // strictly increasing, inside (-1, 1)
  std::vector<double> weights;  // positive, summing to total_mass()

  std::size_t size() const noexcept { return nodes.size(); }
  double total_mass() const;

  /// Sum_i w_i f(x_i) / Sum_i w_i for values already sampled at the nodes.
  double mean(std::span<const double> values) const;
};

/// Closed-form integral of (1 - x)^alpha (1 + x)^beta over [-1, 1].
double jacobi_weight_mass(double alpha, double beta);

/// Golub-Welsch construction. Throws ParameterError for size < 1 or alpha, beta <= -1.
QuadratureRule gauss_jacobi_rule(int size, double alpha, double beta);

/// Same rule, memoized process-wide. Thread-safe; returned rules are immutable.
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(int size, double alpha, double beta);

/// Gauss-Legendre rule mapped to [lo, hi].
QuadratureRule gauss_legendre_interval(int size, double lo, double hi);

namespace linalg {

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit-shift QL.
/// On return `diag` holds the eigenvalues (unsorted) and `first_row[i]` the first component
/// of the i-th normalized eigenvector. `offdiag[i]` couples rows i and i + 1 and is destroyed.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double> offdiag,
                    std::vector<double>& first_row);

}  // namespace linalg

}  // namespace mto

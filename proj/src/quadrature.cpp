#include "mtolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "mtolab/errors.hpp"
#include "mtolab/specfun.hpp"

namespace mto {

double QuadratureRule::total_mass() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double QuadratureRule::mean(std::span<const double> values) const {
  if (values.size() != nodes.size()) {
    throw SizeMismatchError("QuadratureRule::mean: expected " + std::to_string(nodes.size()) +
                            " values, got " + std::to_string(values.size()));
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    num += weights[i] * values[i];
    den += weights[i];
  }
  return num / den;
}

double jacobi_weight_mass(double alpha, double beta) {
  return std::exp((alpha + beta + 1.0) * std::log(2.0) + specfun::log_gamma(alpha + 1.0) +
                  specfun::log_gamma(beta + 1.0) - specfun::log_gamma(alpha + beta + 2.0));
}

namespace linalg {

void tridiagonal_ql(std::vector<double>& d, std::vector<double> offdiag,
                    std::vector<double>& z) {
  const std::size_t n = d.size();
  if (offdiag.size() + 1 != n && !(n == 0 && offdiag.empty())) {
    throw SizeMismatchError("tridiagonal_ql: off-diagonal must have size n - 1");
  }
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  z.assign(n, 0.0);
  if (n == 0) return;
  z[0] = 1.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIter = 60;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxIter) throw std::runtime_error("tridiagonal_ql: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool deflated = false;
        for (std::size_t ii = m; ii-- > l;) {
          const double f = s * e[ii];
          const double b = c * e[ii];
          r = std::hypot(f, g);
          e[ii + 1] = r;
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
          const double zf = z[ii + 1];
          z[ii + 1] = s * z[ii] + c * zf;
          z[ii] = c * z[ii] - s * zf;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace linalg

QuadratureRule gauss_jacobi_rule(int size, double alpha, double beta) {
  if (size < 1) throw ParameterError("gauss_jacobi_rule: size must be >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw ParameterError("gauss_jacobi_rule: alpha and beta must exceed -1");
  }
  const auto n = static_cast<std::size_t>(size);
  const double ab = alpha + beta;

  // Jacobi matrix of the monic orthogonal polynomials.
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag[k] = (beta - alpha) / (ab + 2.0);
    } else {
      diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off[k - 1] = std::sqrt(b2);
  }

  std::vector<double> first;
  linalg::tridiagonal_ql(diag, off, first);

  const double mass = jacobi_weight_mass(alpha, beta);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = diag[order[i]];
    rule.weights[i] = mass * first[order[i]] * first[order[i]];
  }
  // Symmetric weights give exactly symmetric nodes; remove the O(eps) asymmetry.
  if (alpha == beta) {
    for (std::size_t i = 0; i < n / 2; ++i) {
      const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
      const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
      rule.nodes[i] = -x;
      rule.nodes[n - 1 - i] = x;
      rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(int size, double alpha, double beta) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::shared_ptr<const QuadratureRule>> cache;
  const auto key = std::make_tuple(size, alpha, beta);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi_rule(size, alpha, beta));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

QuadratureRule gauss_legendre_interval(int size, double lo, double hi) {
  QuadratureRule rule = *cached_gauss_jacobi_rule(size, 0.0, 0.0);
  const double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = lo + half * (rule.nodes[i] + 1.0);
    rule.weights[i] *= half;
  }
  return rule;
}

}  // namespace mto

#include "mtolab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "mtolab/errors.hpp"
#include "mtolab/inequalities.hpp"
#include "mtolab/quadrature.hpp"
#include "mtolab/random_fields.hpp"

namespace mto::extremal {

QuotientEvaluator::QuotientEvaluator(sphere::ContextPtr ctx, double gamma) : ctx_(std::move(ctx)), gamma_(gamma) {
  const int n = ctx_->dimension();
  const int K = ctx_->truncation();
  if (!(gamma > 0.0) || !(gamma < 0.5 * n)) throw DomainError("QuotientEvaluator: gamma outside (0, n/2)");
  if (n - 2.0 * gamma < sphere::kEndpointGuard) {
    throw EndpointProximityError("QuotientEvaluator: n - 2 gamma is below the endpoint guard");
  }
  p_ = 2.0 * n / (n - 2.0 * gamma);
  sharp_ = sphere::sharp_sobolev_constant(n, gamma);
  eigen_ = sphere::spectrum_P(ctx_, gamma).eigenvalues;

  // |v|^p is a polynomial of degree pK for even integer p; Gauss with M points is exact to 2M - 1.
  const int exact = static_cast<int>(std::ceil(0.5 * (p_ + 2.0) * K)) + 2;
  const int size = std::clamp(std::max({4 * K, exact, ctx_->quadrature_size()}), 8, 4096);
  const double a = ctx_->weight_exponent();
  const auto rule = cached_gauss_jacobi_rule(size, a, a);
  nodes_ = rule->size();
  const double mass = rule->total_mass();
  weights_.resize(nodes_);
  basis_.resize(nodes_ * static_cast<std::size_t>(K + 1));
  for (std::size_t i = 0; i < nodes_; ++i) {
    weights_[i] = rule->weights[i] / mass;
    ctx_->basis_values(rule->nodes[i], std::span<double>(basis_.data() + i * (K + 1), K + 1));
  }
}

double QuotientEvaluator::lp_mean(std::span<const double> c) const {
  const std::size_t nb = c.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_; ++i) {
    double v = 0.0;
    for (std::size_t k = 0; k < nb; ++k) v += c[k] * basis_[i * nb + k];
    acc += weights_[i] * std::pow(std::abs(v), p_);
  }
  return acc;
}

double QuotientEvaluator::value(std::span<const double> c) const {
  double num = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) num += eigen_[k] * c[k] * c[k];
  return num / std::pow(lp_mean(c), 2.0 / p_);
}

double QuotientEvaluator::value_and_gradient(std::span<const double> c, std::span<double> grad) const {
  const std::size_t nb = c.size();
  double num = 0.0;
  for (std::size_t k = 0; k < nb; ++k) num += eigen_[k] * c[k] * c[k];

  // S = avg |v|^p and avg |v|^{p-2} v e_k in one pass.
  std::vector<double> dS(nb, 0.0);
  double S = 0.0;
  for (std::size_t i = 0; i < nodes_; ++i) {
    const double* e = basis_.data() + i * nb;
    double v = 0.0;
    for (std::size_t k = 0; k < nb; ++k) v += c[k] * e[k];
    const double a = std::abs(v);
    const double ap = std::pow(a, p_);
    S += weights_[i] * ap;
    const double d = a == 0.0 ? 0.0 : weights_[i] * ap / v;  // |v|^{p-2} v = |v|^p / v
    for (std::size_t k = 0; k < nb; ++k) dS[k] += d * e[k];
  }
  const double D = std::pow(S, 2.0 / p_);
  const double R = num / D;
  // dD/dc_k = 2 S^{2/p - 1} avg |v|^{p-2} v e_k
  const double dscale = 2.0 * D / S;
  for (std::size_t k = 0; k < nb; ++k) grad[k] = (2.0 * eigen_[k] * c[k] - R * dscale * dS[k]) / D;
  return R;
}

namespace {

void normalize_lp(const QuotientEvaluator& q, std::vector<double>& c) {
  const double s = std::pow(q.lp_mean(c), -1.0 / q.exponent());
  for (double& x : c) x *= s;
}

double norm2(const std::vector<double>& g) {
  double s = 0.0;
  for (double x : g) s += x * x;
  return s;
}

}  // namespace

OptimizerReport minimize_quotient(double gamma, const sphere::ZonalField& init, const OptimizerOptions& options) {
  const auto& ctx = init.context();
  const QuotientEvaluator q(ctx, gamma);
  const auto ic = init.coeffs();
  if (std::all_of(ic.begin(), ic.end(), [](double x) { return x == 0.0; })) {
    throw DomainError("minimize_quotient: initial field is identically zero");
  }

  OptimizerReport rep;
  rep.n = ctx->dimension();
  rep.gamma = gamma;
  rep.K = ctx->truncation();
  rep.sharp_constant = q.sharp_constant();

  std::vector<double> c(ic.begin(), ic.end());
  normalize_lp(q, c);
  std::vector<double> g(c.size());
  std::vector<double> trial(c.size());
  double R = q.value_and_gradient(c, g);
  rep.trace.push_back(R);
  double step = 1.0;
  rep.termination = "max_iterations";

  for (int it = 0; it < options.max_iterations; ++it) {
    const double gg = norm2(g);
    if (std::sqrt(gg) <= 1e-14 * std::max(1.0, R)) {
      rep.termination = "stationary";
      break;
    }
    bool accepted = false;
    double Rt = R;
    for (int halving = 0; halving < 80; ++halving) {
      for (std::size_t k = 0; k < c.size(); ++k) trial[k] = c[k] - step * g[k];
      Rt = q.value(trial);
      if (std::isfinite(Rt) && Rt <= R - options.armijo * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      rep.termination = "line_search_failed";
      break;
    }
    c.swap(trial);
    normalize_lp(q, c);
    const double Rn = q.value_and_gradient(c, g);
    ++rep.iterations;
    rep.trace.push_back(Rn);
    const double rel = (R - Rn) / std::abs(R);
    R = Rn;
    if (rel < options.relative_tolerance) {
      rep.termination = "converged";
      break;
    }
    step *= 2.0;
  }
  rep.final_quotient = R;
  rep.gap = R - rep.sharp_constant;
  rep.argmin = c;
  return rep;
}

OptimizerReport minimize_quotient_multistart(const sphere::ContextPtr& ctx, double gamma,
                                             const OptimizerOptions& options) {
  if (options.starts < 1) throw ParameterError("minimize_quotient_multistart: need at least one start");
  std::vector<std::future<OptimizerReport>> runs;
  for (int s = 0; s < options.starts; ++s) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(s);
    runs.push_back(std::async(std::launch::async, [&ctx, gamma, seed, &options] {
      OptimizerReport r = minimize_quotient(gamma, random_zonal_field(ctx, ctx->truncation(), seed), options);
      r.seed = seed;
      return r;
    }));
  }
  OptimizerReport best;
  bool have = false;
  for (auto& f : runs) {
    OptimizerReport r = f.get();
    if (!have || r.final_quotient < best.final_quotient) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

ConformalFactor conformal_factor_field(const sphere::ContextPtr& ctx, double t, double gamma) {
  const int n = ctx->dimension();
  if (!(t >= 0.0)) throw DomainError("conformal_factor_field: t must be >= 0");
  if (!(gamma > 0.0) || !(gamma < 0.5 * n)) throw DomainError("conformal_factor_field: gamma outside (0, n/2)");
  const double expo = -0.5 * (n - 2.0 * gamma);
  const double ch = std::cosh(t);
  const double sh = std::sinh(t);
  if (t == 0.0) {
    return {sphere::ZonalField::constant(ctx, 1.0), 0.0, false};
  }
  sphere::ZonalField v = sphere::project(ctx, [&](double x) { return std::pow(ch + sh * x, expo); });
  const sphere::AdaptiveMean full =
      sphere::adaptive_log_mean_exp(*ctx, [&](double x) { return 2.0 * expo * std::log(ch + sh * x); });
  const double total = std::exp(full.log_mean);
  const double tail = std::max(0.0, 1.0 - v.mean_square() / total);
  return {std::move(v), tail, tail > 1e-10};
}

}  // namespace mto::extremal

#include "mtolab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtolab/errors.hpp"
#include "mtolab/specfun.hpp"

namespace mto::sphere {

namespace {

void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* where) {
  if (a != b) throw ContextMismatchError(std::string(where) + ": operands belong to different contexts");
}

// Sum_i w_i exp(g_i - gmax), returned as ln of the normalized mean.
double log_mean_exp_on_rule(const QuadratureRule& rule, const std::function<double(double)>& g) {
  std::vector<double> vals(rule.size());
  double gmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    vals[i] = g(rule.nodes[i]);
    gmax = std::max(gmax, vals[i]);
  }
  if (gmax == -std::numeric_limits<double>::infinity()) return gmax;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    num += rule.weights[i] * std::exp(vals[i] - gmax);
    den += rule.weights[i];
  }
  return gmax + std::log(num / den);
}

}  // namespace

SphereContext::SphereContext(int n, int K, std::shared_ptr<const QuadratureRule> rule)
    : n_(n), K_(K), rule_(std::move(rule)) {
  const std::size_t nb = static_cast<std::size_t>(K_) + 1;
  const std::size_t m = rule_->size();
  std::vector<double> raw(m * nb);
  for (std::size_t i = 0; i < m; ++i) {
    specfun::gegenbauer_all(K_, gegenbauer_lambda(), rule_->nodes[i],
                            std::span<double>(raw.data() + i * nb, nb));
  }
  norms_.assign(nb, 0.0);
  const double mass = rule_->total_mass();
  for (std::size_t k = 0; k < nb; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += rule_->weights[i] * raw[i * nb + k] * raw[i * nb + k];
    norms_[k] = 1.0 / std::sqrt(acc / mass);
  }
  node_basis_.resize(m * nb);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < nb; ++k) node_basis_[i * nb + k] = norms_[k] * raw[i * nb + k];
  }
}

std::shared_ptr<const SphereContext> SphereContext::make(int n, int K, int M) {
  if (n < 1) throw ParameterError("SphereContext: dimension n must be >= 1");
  if (K < 1) throw ParameterError("SphereContext: truncation K must be >= 1");
  if (M < 2 * K + 2) {
    throw ParameterError("SphereContext: quadrature size M = " + std::to_string(M) +
                         " must be >= 2K + 2 = " + std::to_string(2 * K + 2));
  }
  const double a = 0.5 * (n - 2);
  return std::shared_ptr<const SphereContext>(
      new SphereContext(n, K, cached_gauss_jacobi_rule(M, a, a)));
}

void SphereContext::basis_values(double x, std::span<double> out) const {
  specfun::gegenbauer_all(K_, gegenbauer_lambda(), x, out);
  for (int k = 0; k <= K_; ++k) out[k] *= norms_[k];
}

std::vector<double> SphereContext::basis_values(double x) const {
  std::vector<double> out(static_cast<std::size_t>(basis_size()));
  basis_values(x, out);
  return out;
}

ZonalField::ZonalField(ContextPtr ctx, std::vector<double> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (!ctx_) throw ParameterError("ZonalField: null context");
  if (coeffs_.size() != static_cast<std::size_t>(ctx_->basis_size())) {
    throw SizeMismatchError("ZonalField: expected " + std::to_string(ctx_->basis_size()) +
                            " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

ZonalField ZonalField::zero(ContextPtr ctx) {
  const auto nb = static_cast<std::size_t>(ctx->basis_size());
  return ZonalField(std::move(ctx), std::vector<double>(nb, 0.0));
}

ZonalField ZonalField::constant(ContextPtr ctx, double value) {
  ZonalField f = zero(std::move(ctx));
  f.coeffs_[0] = value;
  return f;
}

ZonalField ZonalField::mode(ContextPtr ctx, int k, double amplitude) {
  if (k < 0 || k > ctx->truncation()) {
    throw ParameterError("ZonalField::mode: degree " + std::to_string(k) + " outside [0, K]");
  }
  ZonalField f = zero(std::move(ctx));
  f.coeffs_[static_cast<std::size_t>(k)] = amplitude;
  return f;
}

double ZonalField::mean_square() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

double ZonalField::value(double x) const {
  std::vector<double> e = ctx_->basis_values(x);
  double v = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) v += coeffs_[k] * e[k];
  return v;
}

ZonalField analyze(const ContextPtr& ctx, std::span<const double> node_values) {
  const std::size_t m = static_cast<std::size_t>(ctx->quadrature_size());
  if (node_values.size() != m) {
    throw SizeMismatchError("analyze: expected " + std::to_string(m) + " node values, got " +
                            std::to_string(node_values.size()));
  }
  const auto& rule = ctx->rule();
  const double mass = rule.total_mass();
  const std::size_t nb = static_cast<std::size_t>(ctx->basis_size());
  std::vector<double> c(nb, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double wf = rule.weights[i] * node_values[i];
    for (std::size_t k = 0; k < nb; ++k) c[k] += wf * ctx->basis_at_node(i, k);
  }
  for (double& ck : c) ck /= mass;
  return ZonalField(ctx, std::move(c));
}

ZonalField project(const ContextPtr& ctx, const std::function<double(double)>& f) {
  const double a = ctx->weight_exponent();
  const auto rule = cached_gauss_jacobi_rule(2 * ctx->quadrature_size(), a, a);
  const std::size_t nb = static_cast<std::size_t>(ctx->basis_size());
  std::vector<double> c(nb, 0.0);
  std::vector<double> e(nb);
  for (std::size_t i = 0; i < rule->size(); ++i) {
    ctx->basis_values(rule->nodes[i], e);
    const double wf = rule->weights[i] * f(rule->nodes[i]);
    for (std::size_t k = 0; k < nb; ++k) c[k] += wf * e[k];
  }
  const double mass = rule->total_mass();
  for (double& ck : c) ck /= mass;
  return ZonalField(ctx, std::move(c));
}

std::vector<double> synthesize(const ZonalField& field, std::span<const double> nodes) {
  std::vector<double> out(nodes.size());
  std::vector<double> e(static_cast<std::size_t>(field.context()->basis_size()));
  const auto c = field.coeffs();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    field.context()->basis_values(nodes[i], e);
    double v = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) v += c[k] * e[k];
    out[i] = v;
  }
  return out;
}

std::vector<double> synthesize_at_nodes(const ZonalField& field) {
  const auto& ctx = *field.context();
  const std::size_t m = static_cast<std::size_t>(ctx.quadrature_size());
  const std::size_t nb = static_cast<std::size_t>(ctx.basis_size());
  const auto c = field.coeffs();
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double v = 0.0;
    for (std::size_t k = 0; k < nb; ++k) v += c[k] * ctx.basis_at_node(i, k);
    out[i] = v;
  }
  return out;
}

double mean_integral(const SphereContext& ctx, std::span<const double> node_values) {
  return ctx.rule().mean(node_values);
}

double sharp_sobolev_constant(int n, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 0.5 * n)) {
    throw DomainError("sharp_sobolev_constant: gamma must lie in (0, n/2)");
  }
  return specfun::gamma_ratio(0.5 * n + gamma, 0.5 * n - gamma);
}

SpectrumDiagonal spectrum_P(const ContextPtr& ctx, double gamma) {
  const int n = ctx->dimension();
  if (!(gamma > 0.0) || !(gamma < 0.5 * n)) {
    throw DomainError("spectrum_P: gamma = " + std::to_string(gamma) + " outside (0, n/2)");
  }
  SpectrumDiagonal s{ctx, {}, "P_gamma(" + std::to_string(gamma) + ")"};
  s.eigenvalues.resize(static_cast<std::size_t>(ctx->basis_size()));
  for (int k = 0; k <= ctx->truncation(); ++k) {
    s.eigenvalues[k] = specfun::gamma_ratio(k + 0.5 * n + gamma, k + 0.5 * n - gamma);
  }
  return s;
}

SpectrumDiagonal spectrum_P_endpoint(const ContextPtr& ctx) {
  const int n = ctx->dimension();
  SpectrumDiagonal s{ctx, {}, "P_n/2"};
  s.eigenvalues.resize(static_cast<std::size_t>(ctx->basis_size()));
  s.eigenvalues[0] = 0.0;
  // Gamma(k + n) / Gamma(k) = k (k + 1) ... (k + n - 1)
  for (int k = 1; k <= ctx->truncation(); ++k) s.eigenvalues[k] = specfun::rising_factorial(k, n);
  return s;
}

SpectrumDiagonal spectrum_B(const ContextPtr& ctx) {
  SpectrumDiagonal s{ctx, {}, "B"};
  s.eigenvalues.resize(static_cast<std::size_t>(ctx->basis_size()));
  for (int k = 0; k <= ctx->truncation(); ++k) s.eigenvalues[k] = k + 0.5 * (ctx->dimension() - 1);
  return s;
}

ZonalField apply_diagonal(const ZonalField& field, const SpectrumDiagonal& spectrum) {
  require_same_context(field.context(), spectrum.ctx, "apply_diagonal");
  std::vector<double> c(field.coeffs().begin(), field.coeffs().end());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= spectrum.eigenvalues[k];
  return ZonalField(field.context(), std::move(c));
}

double quadratic_form(const ZonalField& field, const SpectrumDiagonal& spectrum) {
  require_same_context(field.context(), spectrum.ctx, "quadratic_form");
  const auto c = field.coeffs();
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) s += spectrum.eigenvalues[k] * c[k] * c[k];
  return s;
}

AdaptiveMean adaptive_log_mean_exp(const SphereContext& ctx,
                                   const std::function<double(double)>& log_integrand,
                                   const AdaptiveOptions& options) {
  const double a = ctx.weight_exponent();
  int points = std::max(4 * ctx.truncation(), 8);
  AdaptiveMean result;
  double previous = log_mean_exp_on_rule(*cached_gauss_jacobi_rule(points, a, a), log_integrand);
  while (true) {
    const int next = 2 * points;
    if (next > options.max_points) {
      result.log_mean = previous;
      result.points = points;
      result.capped = true;
      return result;
    }
    const double current = log_mean_exp_on_rule(*cached_gauss_jacobi_rule(next, a, a), log_integrand);
    const double change = std::abs(std::expm1(current - previous));
    points = next;
    previous = current;
    result.last_relative_change = change;
    if (change < options.relative_tolerance || !std::isfinite(current)) break;
  }
  result.log_mean = previous;
  result.points = points;
  return result;
}

double gram_deviation(const SphereContext& ctx) {
  const std::size_t m = static_cast<std::size_t>(ctx.quadrature_size());
  const std::size_t nb = static_cast<std::size_t>(ctx.basis_size());
  const auto& rule = ctx.rule();
  const double mass = rule.total_mass();
  double worst = 0.0;
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = a; b < nb; ++b) {
      double g = 0.0;
      for (std::size_t i = 0; i < m; ++i) g += rule.weights[i] * ctx.basis_at_node(i, a) * ctx.basis_at_node(i, b);
      g /= mass;
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace mto::sphere

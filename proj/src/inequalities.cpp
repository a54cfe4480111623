#include "mtolab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtolab/errors.hpp"
#include "mtolab/quadrature.hpp"
#include "mtolab/specfun.hpp"

namespace mto::sphere {

namespace {

void require_open_range(int n, double gamma, const char* where) {
  if (!(gamma > 0.0) || !(gamma < 0.5 * n)) {
    throw DomainError(std::string(where) + ": gamma = " + std::to_string(gamma) + " outside (0, n/2)");
  }
}

void require_guard(int n, double gamma, const char* where) {
  require_open_range(n, gamma, where);
  if (n - 2.0 * gamma < kEndpointGuard) {
    throw EndpointProximityError(std::string(where) + ": n - 2 gamma = " + std::to_string(n - 2.0 * gamma) +
                                 " is below the endpoint guard");
  }
}

double factorial(int m) { return specfun::rising_factorial(1.0, m); }

QuadratureDiagnostics to_diagnostics(const AdaptiveMean& m) {
  return {m.points, m.last_relative_change, m.capped};
}

}  // namespace

SobolevTerms sobolev_terms(double gamma, const ZonalField& v) {
  const auto& ctx = v.context();
  const int n = ctx->dimension();
  require_open_range(n, gamma, "sobolev_pair");
  const auto c = v.coeffs();
  if (std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; })) {
    throw DomainError("sobolev_pair: v is identically zero");
  }
  SobolevTerms t;
  t.sharp_constant = sharp_sobolev_constant(n, gamma);
  t.energy = quadratic_form(v, spectrum_P(ctx, gamma));
  t.mean_square = v.mean_square();

  const double p = 2.0 * n / (n - 2.0 * gamma);
  const AdaptiveMean lp = adaptive_log_mean_exp(*ctx, [&](double x) {
    const double a = std::abs(v.value(x));
    return a == 0.0 ? -std::numeric_limits<double>::infinity() : p * std::log(a);
  });
  t.lp_term = std::exp((2.0 / p) * lp.log_mean);
  t.diagnostics = to_diagnostics(lp);
  return t;
}

DeficitRecord sobolev_pair(double gamma, const ZonalField& v, std::string field) {
  const SobolevTerms t = sobolev_terms(gamma, v);
  DeficitRecord r;
  r.inequality = "sobolev";
  r.n = v.context()->dimension();
  r.parameter = gamma;
  r.lhs = t.sharp_constant * t.lp_term;
  r.rhs = t.energy;
  r.deficit = r.rhs - r.lhs;
  r.field = std::move(field);
  r.diagnostics = t.diagnostics;
  return r;
}

DeficitRecord mto_pair(const ZonalField& w, std::string field) {
  const auto& ctx = w.context();
  const int n = ctx->dimension();
  const double fact = factorial(n - 1);
  const AdaptiveMean em = adaptive_log_mean_exp(*ctx, [&](double x) { return n * w.value(x); });

  DeficitRecord r;
  r.inequality = "mto";
  r.n = n;
  r.lhs = 2.0 * fact / n * em.log_mean;
  r.rhs = quadratic_form(w, spectrum_P_endpoint(ctx)) + 2.0 * fact * w.mean();
  r.deficit = r.rhs - r.lhs;
  r.field = std::move(field);
  r.diagnostics = to_diagnostics(em);
  return r;
}

ZonalField exponential_field(const ZonalField& w, double scale) {
  return project(w.context(), [&](double x) { return std::exp(scale * w.value(x)); });
}

EndpointFunctionals endpoint_functionals(double gamma, const ZonalField& w) {
  const int n = w.context()->dimension();
  require_guard(n, gamma, "endpoint_functionals");
  const double gap = n - 2.0 * gamma;
  const ZonalField v = exponential_field(w, 0.5 * gap);
  const SobolevTerms t = sobolev_terms(gamma, v);

  EndpointFunctionals out;
  out.scale = 4.0 / (gap * gap);
  out.lhs = out.scale * t.sharp_constant * (t.lp_term - t.mean_square);
  out.rhs = out.scale * (t.energy - t.sharp_constant * t.mean_square);
  out.sobolev.inequality = "sobolev";
  out.sobolev.n = n;
  out.sobolev.parameter = gamma;
  out.sobolev.lhs = t.sharp_constant * t.lp_term;
  out.sobolev.rhs = t.energy;
  out.sobolev.deficit = out.sobolev.rhs - out.sobolev.lhs;
  out.sobolev.diagnostics = t.diagnostics;
  return out;
}

double lhs_gamma(double gamma, const ZonalField& w) { return endpoint_functionals(gamma, w).lhs; }

double rhs_gamma(double gamma, const ZonalField& w) { return endpoint_functionals(gamma, w).rhs; }

double lhs_limit_target(const ZonalField& w) {
  const int n = w.context()->dimension();
  const double mean = w.mean();
  const AdaptiveMean em = adaptive_log_mean_exp(*w.context(), [&](double x) { return n * (w.value(x) - mean); });
  return 2.0 * factorial(n - 1) / n * em.log_mean;
}

double rhs_limit_target(const ZonalField& w) { return quadratic_form(w, spectrum_P_endpoint(w.context())); }

LimitTable limit_study(const ZonalField& w, std::span<const double> gammas, std::string field) {
  const int n = w.context()->dimension();
  for (std::size_t i = 1; i < gammas.size(); ++i) {
    if (!(gammas[i] > gammas[i - 1])) throw ParameterError("limit_study: gamma sequence must be strictly increasing");
  }
  LimitTable table;
  table.setting = "sphere";
  table.n = n;
  table.field = std::move(field);
  const double lt = lhs_limit_target(w);
  const double rt = rhs_limit_target(w);
  for (double g : gammas) {
    const EndpointFunctionals ef = endpoint_functionals(g, w);
    LimitRow row;
    row.parameter = g;
    row.gap = n - 2.0 * g;
    row.lhs = ef.lhs;
    row.rhs = ef.rhs;
    row.lhs_target = lt;
    row.rhs_target = rt;
    table.rows.push_back(row);
  }
  finalize_limit_table(table);
  return table;
}

std::vector<double> refined_gamma_sequence(int n, double gamma_gap, double refine, int steps) {
  if (!(refine > 1.0) || steps < 1 || !(gamma_gap > 0.0)) {
    throw ParameterError("refined_gamma_sequence: need gap > 0, refine > 1, steps >= 1");
  }
  std::vector<double> out;
  for (int m = 1; m <= steps; ++m) {
    const double g = 0.5 * n - gamma_gap * std::pow(refine, -m);
    require_guard(n, g, "refined_gamma_sequence");
    out.push_back(g);
  }
  return out;
}

TaylorRemainderReport taylor_remainder_check(double gamma, const ZonalField& w) {
  const auto& ctx = w.context();
  const int n = ctx->dimension();
  require_guard(n, gamma, "taylor_remainder_check");
  const double gap = n - 2.0 * gamma;
  const ZonalField v = exponential_field(w, 0.5 * gap);
  const std::vector<double> vn = synthesize_at_nodes(v);
  const std::vector<double> wn = synthesize_at_nodes(w);
  const QuadratureRule s_rule = gauss_legendre_interval(32, 0.0, 1.0);

  TaylorRemainderReport rep;
  double sup_w2 = 0.0;
  double sup_abs_w = 0.0;
  for (std::size_t i = 0; i < vn.size(); ++i) {
    const double wi = wn[i];
    const double f = (vn[i] - 1.0 - (0.5 * n - gamma) * wi) / (gap * gap);
    double integral = 0.0;
    for (std::size_t q = 0; q < s_rule.size(); ++q) {
      const double s = s_rule.nodes[q];
      integral += s_rule.weights[q] * (1.0 - s) * std::exp(0.5 * gap * wi * s);
    }
    // e^x - 1 - x = x^2 int_0^1 (1-s) e^{xs} ds with x = gap w / 2
    const double closed = 0.25 * wi * wi * integral;
    rep.sup_remainder = std::max(rep.sup_remainder, std::abs(f));
    rep.closed_form_discrepancy = std::max(rep.closed_form_discrepancy, std::abs(f - closed));
    sup_w2 = std::max(sup_w2, wi * wi);
    sup_abs_w = std::max(sup_abs_w, std::abs(wi));
  }
  rep.bound = sup_w2 / 8.0 * std::exp(0.5 * gap * sup_abs_w);
  rep.within_bound = rep.sup_remainder <= rep.bound * (1.0 + 1e-12) + 1e-14;
  return rep;
}

}  // namespace mto::sphere

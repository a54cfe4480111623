#include "mtolab/selftest.hpp"

#include <algorithm>
#include <cmath>

#include "mtolab/cr.hpp"
#include "mtolab/extremal.hpp"
#include "mtolab/inequalities.hpp"
#include "mtolab/quadrature.hpp"
#include "mtolab/random_fields.hpp"
#include "mtolab/sphere.hpp"

namespace mto {

namespace {

CheckResult at_most(std::string name, double value, double tol, int code = 2) {
  return {std::move(name), value <= tol, value, tol, code};
}

CheckResult at_least(std::string name, double value, double floor, int code = 2) {
  return {std::move(name), value >= floor, value, floor, code};
}

double legendre_exactness() {
  const int M = 12;
  const auto rule = gauss_jacobi_rule(M, 0.0, 0.0);
  double worst = 0.0;
  for (int k = 0; k <= 2 * M - 1; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
    worst = std::max(worst, k % 2 == 0 ? std::abs(s - exact) / exact : std::abs(s));
  }
  return worst;
}

double round_trip(std::uint64_t seed) {
  const auto ctx = sphere::SphereContext::make(2, 16, 34);
  const auto f = random_zonal_field(ctx, 16, seed);
  const auto g = sphere::analyze(ctx, sphere::synthesize_at_nodes(f));
  double worst = 0.0;
  for (int k = 0; k <= 16; ++k) worst = std::max(worst, std::abs(f[k] - g[k]));
  return worst;
}

double endpoint_spectrum_s2() {
  const auto ctx = sphere::SphereContext::make(2, 64, 130);
  const auto s = sphere::spectrum_P_endpoint(ctx);
  double worst = std::abs(s.eigenvalues[0]);
  for (int k = 1; k <= 64; ++k) {
    const double exact = double(k) * (k + 1);
    worst = std::max(worst, std::abs(s.eigenvalues[k] - exact) / exact);
  }
  return worst;
}

double constant_deficits() {
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const auto ctx = sphere::SphereContext::make(n, 4, 10);
    const auto c = sphere::ZonalField::constant(ctx, 1.3);
    worst = std::max(worst, std::abs(sphere::sobolev_pair(0.25 * n, c).deficit));
    worst = std::max(worst, std::abs(sphere::mto_pair(c).deficit));
  }
  return worst;
}

double min_random_deficit(std::uint64_t seed) {
  double lowest = INFINITY;
  const auto ctx = sphere::SphereContext::make(2, 12, 26);
  for (int i = 0; i < 20; ++i) {
    const auto w = random_zonal_field(ctx, 12, seed + i);
    lowest = std::min(lowest, sphere::mto_pair(w).deficit);
    lowest = std::min(lowest, sphere::sobolev_pair(0.5, sphere::exponential_field(w, 1.0)).deficit);
  }
  return lowest;
}

double min_cr_deficit(std::uint64_t seed) {
  double lowest = INFINITY;
  const auto ctx = cr::CRContext::make(1, 8);
  for (int i = 0; i < 10; ++i) {
    lowest = std::min(lowest, cr::cr_mto_pair(random_pluriharmonic_field(ctx, 8, seed + i)).deficit);
  }
  return lowest;
}

double cr_sublaplacian_identity() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const int Q = 2 * n + 2;
    for (int j = 0; j <= 16; ++j) {
      for (int k = 0; k <= 16; ++k) {
        const double lhs = cr::lambda_j(2.0, j, Q) * cr::lambda_j(2.0, k, Q);
        const double rhs = j * k + 0.5 * n * (j + k) + 0.25 * n * n;
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
      }
    }
  }
  return worst;
}

double gradient_error(std::uint64_t seed) {
  const auto ctx = sphere::SphereContext::make(2, 8, 18);
  const extremal::QuotientEvaluator q(ctx, 0.5);
  const auto c = random_smooth_coefficients(8, seed);
  std::vector<double> grad(c.size());
  q.value_and_gradient(c, grad);
  double worst = 0.0;
  const double h = 1e-6;
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto up = c;
    auto dn = c;
    up[k] += h;
    dn[k] -= h;
    const double fd = (q.value(up) - q.value(dn)) / (2 * h);
    worst = std::max(worst, std::abs(fd - grad[k]) / std::max(1.0, std::abs(grad[k])));
  }
  return worst;
}

double sphere_limit_order() {
  const auto ctx = sphere::SphereContext::make(2, 24, 50);
  auto w = sphere::ZonalField::zero(ctx);
  w.mutable_coeffs()[1] = 0.5;
  w.mutable_coeffs()[3] = 0.3;
  const auto t = sphere::limit_study(w, sphere::refined_gamma_sequence(2, 0.4, 2.0, 6));
  return std::min(t.lhs_order, t.rhs_order);
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(at_most("quadrature_exactness", legendre_exactness(), 1e-10));
  for (int n = 1; n <= 3; ++n) {
    const auto ctx = sphere::SphereContext::make(n, 16, 34);
    out.push_back(at_most("sphere_gram_n" + std::to_string(n), sphere::gram_deviation(*ctx), 1e-11));
  }
  out.push_back(at_most("disk_gram", cr::gram_deviation(*cr::CRContext::make(1, 8)), 1e-11));
  out.push_back(at_most("round_trip", round_trip(seed), 1e-12));
  out.push_back(at_most("endpoint_spectrum_s2", endpoint_spectrum_s2(), 1e-12));
  out.push_back(at_most("constant_equality", constant_deficits(), 1e-10));
  out.push_back(at_least("random_deficits", min_random_deficit(seed), -1e-8));
  out.push_back(at_least("cr_mto_deficits", min_cr_deficit(seed), -1e-8));
  out.push_back(at_most("cr_sublaplacian", cr_sublaplacian_identity(), 1e-10));
  out.push_back(at_most("quotient_gradient", gradient_error(seed), 1e-5));
  const double order = sphere_limit_order();
  out.push_back({"sphere_limit_order", std::abs(order - 1.0) <= 0.3, order, 0.3, 3});
  return out;
}

}  // namespace mto

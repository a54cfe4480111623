#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "mtolab/errors.hpp"
#include "mtolab/quadrature.hpp"

using namespace mto;

namespace {

// Worst relative moment error of the rule for degrees 0..2M-1.
double moment_error(const QuadratureRule& rule) {
  const int M = static_cast<int>(rule.size());
  const auto exact = oracle::jacobi_moments(rule.alpha, rule.beta, 2 * M);
  double worst = 0.0;
  for (int k = 0; k <= 2 * M - 1; ++k) {
    long double s = 0.0L;
    for (int i = 0; i < M; ++i) s += rule.weights[i] * std::pow(static_cast<long double>(rule.nodes[i]), k);
    long double scale = std::abs(exact[k]);
    if (k > 0) scale = std::max(scale, std::sqrt(std::abs(exact[k - 1] * exact[k + 1])));
    worst = std::max(worst, static_cast<double>(std::abs(s - exact[k]) / scale));
  }
  return worst;
}

}  // namespace

TEST_CASE("one- and two-point Gauss-Legendre") {
  const auto r1 = gauss_jacobi_rule(1, 0.0, 0.0);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-14));

  const auto r2 = gauss_jacobi_rule(2, 0.0, 0.0);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Legendre rule matches Newton-iterated reference") {
  const auto ref = oracle::legendre(40);
  const auto r = gauss_jacobi_rule(40, 0.0, 0.0);
  std::vector<double> xs = ref.x;
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    CHECK(r.nodes[i] == doctest::Approx(ref.x[order[i]]).epsilon(1e-13));
    CHECK(r.weights[i] == doctest::Approx(ref.w[order[i]]).epsilon(1e-12));
  }
}

TEST_CASE("(8, 0.5, 0.5) integrates x^k up to k = 15") {
  const auto rule = gauss_jacobi_rule(8, 0.5, 0.5);
  CHECK(moment_error(rule) <= 1e-10);
  // total mass is pi/2 for the Chebyshev-U weight
  CHECK(rule.total_mass() == doctest::Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("random Jacobi parameters: exactness and rule invariants") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ab(-0.9, 3.0);
  std::uniform_int_distribution<int> size(1, 64);
  for (int trial = 0; trial < 40; ++trial) {
    const double a = ab(rng), b = ab(rng);
    const int M = trial < 4 ? 64 : size(rng);
    const auto rule = gauss_jacobi_rule(M, a, b);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(M);
    CHECK(moment_error(rule) <= 1e-10);
    for (int i = 0; i < M; ++i) {
      CHECK(rule.weights[i] > 0.0);
      CHECK(rule.nodes[i] > -1.0);
      CHECK(rule.nodes[i] < 1.0);
      if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK(sum == doctest::Approx(jacobi_weight_mass(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("symmetric rules are symmetric") {
  const auto r = gauss_jacobi_rule(17, 1.5, 1.5);
  for (int i = 0; i < 17; ++i) {
    CHECK(r.nodes[i] == -r.nodes[16 - i]);
    CHECK(r.weights[i] == r.weights[16 - i]);
  }
  CHECK(r.nodes[8] == 0.0);
}

TEST_CASE("invalid rule parameters") {
  CHECK_THROWS_AS(gauss_jacobi_rule(0, 0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(gauss_jacobi_rule(4, -1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(gauss_jacobi_rule(4, 0.0, -1.5), ParameterError);
}

TEST_CASE("rule mean and cache") {
  const auto r = gauss_jacobi_rule(6, 0.0, 0.0);
  std::vector<double> ones(6, 3.5);
  CHECK(r.mean(ones) == doctest::Approx(3.5));
  std::vector<double> wrong(5, 1.0);
  CHECK_THROWS_AS(r.mean(wrong), SizeMismatchError);

  const auto a = cached_gauss_jacobi_rule(12, 0.5, 0.5);
  const auto b = cached_gauss_jacobi_rule(12, 0.5, 0.5);
  CHECK(a.get() == b.get());
  CHECK(a->nodes == gauss_jacobi_rule(12, 0.5, 0.5).nodes);
}

TEST_CASE("Gauss-Legendre on an interval") {
  const auto r = gauss_legendre_interval(4, 0.0, 3.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 7);
  CHECK(s == doctest::Approx(std::pow(3.0, 8) / 8).epsilon(1e-13));
}

TEST_CASE("tridiagonal QL eigenvalues and first components") {
  std::vector<double> d{2.0, 2.0, 2.0};
  std::vector<double> z;
  linalg::tridiagonal_ql(d, {1.0, 1.0}, z);
  std::vector<double> ev = d;
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(2.0 - std::sqrt(2.0)));
  CHECK(ev[1] == doctest::Approx(2.0));
  CHECK(ev[2] == doctest::Approx(2.0 + std::sqrt(2.0)));
  double norm = 0.0;
  for (double x : z) norm += x * x;
  CHECK(norm == doctest::Approx(1.0));
  // eigenvector of 2 + sqrt 2 is (1/2, sqrt2/2, 1/2)
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(d[i] - (2.0 + std::sqrt(2.0))) < 1e-12) CHECK(std::abs(z[i]) == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(linalg::tridiagonal_ql(d, {1.0}, z), SizeMismatchError);
}

#include <doctest.h>

#include <cmath>
#include <limits>

#include "mtolab/errors.hpp"
#include "mtolab/specfun.hpp"

using namespace mto;
using namespace mto::specfun;

TEST_CASE("log_gamma known values") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  CHECK(log_gamma(6.0) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("log_gamma agrees with lgamma over [1e-3, 1e4]") {
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = std::pow(10.0, -3.0 + 7.0 * i / 2000.0);
    const double ref = std::lgamma(x);
    const double err = std::abs(log_gamma(x) - ref);
    worst = std::max(worst, err / std::max(std::abs(ref), 0.1));
    CHECK(err <= 1e-13 * std::abs(ref) + 1e-14);
  }
  MESSAGE("worst scaled error " << worst);
  // half-integers in closed form: Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
  double lf = 0.5 * std::log(M_PI);
  for (int k = 1; k < 60; ++k) {
    lf += std::log(k - 0.5);
    CHECK(log_gamma(k + 0.5) == doctest::Approx(lf).epsilon(1e-13));
  }
}

TEST_CASE("log_gamma rejects nonpositive and non-finite input") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("gamma_ratio") {
  CHECK(gamma_ratio(2.5, 0.5) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(gamma_ratio(3.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gamma_ratio(1.5, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  // large arguments stay finite where tgamma overflows
  CHECK(gamma_ratio(300.5, 300.0) == doctest::Approx(std::sqrt(300.0)).epsilon(1e-3));
  CHECK_THROWS_AS(gamma_ratio(-1.0, 2.0), DomainError);
  CHECK_THROWS_AS(gamma_ratio(1.0, 0.0), DomainError);
}

TEST_CASE("rising_factorial") {
  CHECK(rising_factorial(3.0, 0) == 1.0);
  CHECK(rising_factorial(1.0, 5) == 120.0);
  CHECK(rising_factorial(2.0, 3) == 24.0);
  CHECK(rising_factorial(0.5, 2) == doctest::Approx(0.75));
}

TEST_CASE("gegenbauer small cases") {
  CHECK(gegenbauer_eval(0, 2.3, 0.4) == 1.0);
  CHECK(gegenbauer_eval(1, 1.0, 0.5) == doctest::Approx(1.0));
  CHECK(gegenbauer_eval(2, 1.0, 0.0) == doctest::Approx(-1.0));
  CHECK(gegenbauer_eval(2, 1.0, 0.7) == doctest::Approx(4 * 0.49 - 1));
  // lambda = 1/2 is Legendre
  for (int k = 0; k < 20; ++k) CHECK(gegenbauer_eval(k, 0.5, 0.3) == doctest::Approx(std::legendre(k, 0.3)).epsilon(1e-12));
}

TEST_CASE("gegenbauer lambda = 0 uses cos(k theta)") {
  for (int k = 0; k < 30; ++k) {
    for (double x : {-1.0, -0.4, 0.0, 0.77, 1.0}) {
      CHECK(gegenbauer_eval(k, 0.0, x) == doctest::Approx(std::cos(k * std::acos(x))).epsilon(1e-12));
    }
  }
}

TEST_CASE("gegenbauer endpoint values") {
  for (double lambda : {0.5, 1.0, 1.5, 2.0, 3.7, 5.0}) {
    for (int k = 0; k <= 100; ++k) {
      const double exact = std::exp(std::lgamma(k + 2 * lambda) - std::lgamma(k + 1.0) - std::lgamma(2 * lambda));
      CHECK(gegenbauer_eval(k, lambda, 1.0) == doctest::Approx(exact).epsilon(1e-10));
      CHECK(std::abs(gegenbauer_eval(k, lambda, -1.0)) == doctest::Approx(exact).epsilon(1e-10));
    }
  }
}

TEST_CASE("gegenbauer_all matches single evaluations") {
  std::vector<double> out(16);
  gegenbauer_all(15, 1.5, -0.31, out);
  for (int k = 0; k <= 15; ++k) CHECK(out[k] == doctest::Approx(gegenbauer_eval(k, 1.5, -0.31)).epsilon(1e-14));
  CHECK_THROWS(gegenbauer_eval(3, 1.0, 1.5));
}

TEST_CASE("jacobi small cases") {
  CHECK(jacobi_eval(0, 1.3, -0.2, 0.1) == 1.0);
  CHECK(jacobi_eval(1, 0.0, 0.0, 0.3) == doctest::Approx(0.3));
  CHECK(jacobi_eval(1, 2.0, 0.0, 1.0) == doctest::Approx(3.0));
  // explicit P_2^{(a,b)}
  const double a = 0.7, b = 1.9, x = -0.35;
  const double p2 = 0.125 * ((a + b + 3) * (a + b + 4) * (x - 1) * (x - 1) + 4 * (a + 2) * (a + b + 3) * (x - 1) +
                             4 * (a + 1) * (a + 2));
  CHECK(jacobi_eval(2, a, b, x) == doctest::Approx(p2).epsilon(1e-13));
  for (int m = 0; m < 30; ++m) {
    CHECK(jacobi_eval(m, 2.0, 3.0, 1.0) == doctest::Approx(jacobi_at_one(m, 2.0)).epsilon(1e-12));
    CHECK(jacobi_eval(m, 0.0, 0.0, 0.42) == doctest::Approx(std::legendre(m, 0.42)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(jacobi_eval(2, -1.0, 0.0, 0.0), ParameterError);
}

TEST_CASE("disk polynomials") {
  CHECK(disk_poly_eval(0, 0, 2, 0.3, 1.1) == std::complex<double>(1.0, 0.0));
  for (int j = 1; j < 6; ++j) {
    const auto z = disk_poly_eval(j, 0, 2, 0.6, 0.4);
    const auto ref = std::pow(0.6, j) * std::exp(std::complex<double>(0.0, j * 0.4));
    CHECK(z.real() == doctest::Approx(ref.real()).epsilon(1e-13));
    CHECK(z.imag() == doctest::Approx(ref.imag()).epsilon(1e-13));
  }
  CHECK(disk_poly_eval(1, 1, 1, 1.0, 0.0).real() == doctest::Approx(1.0));
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 6; ++k) {
      const auto z = disk_poly_eval(j, k, 3, 1.0, 0.9);
      CHECK(z.real() == doctest::Approx(std::cos((j - k) * 0.9)).epsilon(1e-12));
      CHECK(z.imag() == doctest::Approx(std::sin((j - k) * 0.9)).epsilon(1e-12));
    }
  }
  // R_{1,1} for n = 1 is 2r^2 - 1
  CHECK(disk_poly_radial(1, 1, 1, 0.5) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(disk_poly_eval(1, 0, 1, 1.2, 0.0), DomainError);
  CHECK_THROWS_AS(disk_poly_eval(1, 0, 1, -0.1, 0.0), DomainError);
}

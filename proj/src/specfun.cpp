#include "mtolab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mtolab/errors.hpp"

namespace mto::specfun {

namespace {

// Godfrey's coefficient set for g = 607/128.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kLanczosG = 5.24218750000000000;  // 607/128 + 1/2
constexpr double kSqrtTwoPi = 2.5066282746310005;

double lanczos_log_gamma(double x) {
  double tmp = x + kLanczosG;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  double y = x;
  for (double c : kLanczos) ser += c / ++y;
  return tmp + std::log(kSqrtTwoPi * ser / x);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  if (x < 0.5) return lanczos_log_gamma(x + 1.0) - std::log(x);
  return lanczos_log_gamma(x);
}

double gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("gamma_ratio: arguments must be positive");
  }
  return std::exp(log_gamma(a) - log_gamma(b));
}

double rising_factorial(double x, int count) {
  double p = 1.0;
  for (int i = 0; i < count; ++i) p *= x + i;
  return p;
}

void gegenbauer_all(int kmax, double lambda, double x, std::span<double> out) {
  if (kmax < 0 || out.size() < static_cast<std::size_t>(kmax) + 1) {
    throw ParameterError("gegenbauer_all: output span too small");
  }
  out[0] = 1.0;
  if (kmax == 0) return;
  if (lambda == 0.0) {
    out[1] = x;
    for (int k = 1; k < kmax; ++k) out[k + 1] = 2.0 * x * out[k] - out[k - 1];
    return;
  }
  out[1] = 2.0 * lambda * x;
  for (int k = 1; k < kmax; ++k) {
    out[k + 1] = (2.0 * (k + lambda) * x * out[k] - (k + 2.0 * lambda - 1.0) * out[k - 1]) / (k + 1);
  }
}

double gegenbauer_eval(int k, double lambda, double x) {
  if (k < 0) throw ParameterError("gegenbauer_eval: negative degree");
  if (lambda < 0.0) throw DomainError("gegenbauer_eval: lambda must be >= 0");
  if (x < -1.0 || x > 1.0) throw DomainError("gegenbauer_eval: x outside [-1, 1]");
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  gegenbauer_all(k, lambda, x, c);
  return c.back();
}

void jacobi_all(int mmax, double alpha, double beta, double x, std::span<double> out) {
  if (mmax < 0 || out.size() < static_cast<std::size_t>(mmax) + 1) {
    throw ParameterError("jacobi_all: output span too small");
  }
  out[0] = 1.0;
  if (mmax == 0) return;
  out[1] = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);
  const double ab = alpha + beta;
  for (int k = 2; k <= mmax; ++k) {
    const double s = 2.0 * k + ab;
    const double next = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta) * out[k - 1] -
                        2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s * out[k - 2];
    out[k] = next / (2.0 * k * (k + ab) * (s - 2.0));
  }
}

double jacobi_eval(int m, double alpha, double beta, double x) {
  if (m < 0) throw ParameterError("jacobi_eval: negative degree");
  if (alpha <= -1.0 || beta <= -1.0) throw ParameterError("jacobi_eval: alpha, beta must exceed -1");
  if (x < -1.0 || x > 1.0) throw DomainError("jacobi_eval: x outside [-1, 1]");
  std::vector<double> p(static_cast<std::size_t>(m) + 1);
  jacobi_all(m, alpha, beta, x, p);
  return p.back();
}

double jacobi_at_one(int m, double alpha) {
  // binom(m + alpha, m) = (alpha + 1)_m / m!
  double v = 1.0;
  for (int i = 1; i <= m; ++i) v *= (alpha + i) / i;
  return v;
}

double disk_poly_radial(int j, int k, int n, double r) {
  if (j < 0 || k < 0) throw ParameterError("disk_poly: negative bidegree");
  if (n < 1) throw ParameterError("disk_poly: CR dimension n must be >= 1");
  if (r < 0.0 || r > 1.0) throw DomainError("disk_poly: r outside [0, 1]");
  const int shift = std::abs(j - k);
  const int m = std::min(j, k);
  const double alpha = n - 1.0;
  const double s = 2.0 * r * r - 1.0;
  const double jac = jacobi_eval(m, alpha, shift, s) / jacobi_at_one(m, alpha);
  return std::pow(r, shift) * jac;
}

std::complex<double> disk_poly_eval(int j, int k, int n, double r, double phi) {
  const double radial = disk_poly_radial(j, k, n, r);
  const double angle = (j - k) * phi;
  return {radial * std::cos(angle), radial * std::sin(angle)};
}

}  // namespace mto::specfun

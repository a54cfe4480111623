#pragma once

// Reference values computed without the library: Newton-iterated Gauss-Legendre, closed-form
// Jacobi moments, Bessel series, explicit low-dimensional zonal bases.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre on [-1, 1] by Newton iteration on P_m.
inline Rule legendre(int m) {
  Rule r{std::vector<double>(m), std::vector<double>(m)};
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

/// Composite Gauss-Legendre for int_a^b f.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 200, int m = 20) {
  static thread_local std::pair<int, Rule> cache{0, {}};
  if (cache.first != m) cache = {m, legendre(m)};
  const Rule& r = cache.second;
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += 0.5 * h * r.w[i] * f(lo + 0.5 * h * (r.x[i] + 1.0));
  }
  return s;
}

/// Sphere average on S^n of a zonal function g(cos theta), by dense quadrature in theta.
inline double sphere_mean(int n, const std::function<double(double)>& g, int panels = 400) {
  const auto weight = [n](double t) { return std::pow(std::sin(t), n - 1); };
  const double num = integrate([&](double t) { return g(std::cos(t)) * weight(t); }, 0.0, kPi, panels);
  const double den = integrate(weight, 0.0, kPi, panels);
  return num / den;
}

/// int_{-1}^1 (1-x)^a (1+x)^b x^k dx for k = 0..kmax, by integration by parts, in long double.
inline std::vector<long double> jacobi_moments(double a, double b, int kmax) {
  std::vector<long double> m(static_cast<std::size_t>(kmax) + 2);
  const long double A = a, B = b;
  m[0] = std::exp((A + B + 1) * std::log(2.0L) + std::lgamma(A + 1) + std::lgamma(B + 1) - std::lgamma(A + B + 2));
  m[1] = m[0] * (B - A) / (A + B + 2);
  for (int k = 1; k <= kmax; ++k) m[k + 1] = (k * m[k - 1] + (B - A) * m[k]) / (k + A + B + 2);
  return m;
}

/// Modified Bessel I_1 by its power series.
inline double bessel_i1(double x) {
  double term = 0.5 * x;
  double s = term;
  for (int k = 1; k < 60; ++k) {
    term *= 0.25 * x * x / (k * (k + 1.0));
    s += term;
  }
  return s;
}

/// Orthonormal (mean inner product) zonal basis in closed form for n = 1, 2, 3.
inline double zonal_basis(int n, int k, double x) {
  if (n == 1) return k == 0 ? 1.0 : std::sqrt(2.0) * std::cos(k * std::acos(x));
  if (n == 2) return std::sqrt(2.0 * k + 1.0) * std::legendre(k, x);
  // n = 3: Chebyshev U_k(cos t) = sin((k+1)t)/sin t.
  double u0 = 1.0, u1 = 2.0 * x;
  if (k == 0) return u0;
  for (int j = 2; j <= k; ++j) {
    const double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

}  // namespace oracle

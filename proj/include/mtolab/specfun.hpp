#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mto::specfun {

/// ln Gamma(x) for x > 0. Lanczos series (g = 607/128, 14 terms); arguments below 1/2 are
/// shifted up with Gamma(x) = Gamma(x + 1) / x. Throws DomainError for x <= 0.
double log_gamma(double x);

/// Gamma(a) / Gamma(b), evaluated as exp(ln Gamma(a) - ln Gamma(b)).
double gamma_ratio(double a, double b);

/// Rising factorial x (x + 1) ... (x + count - 1), as an exact product.
double rising_factorial(double x, int count);

/// Gegenbauer C_k^lambda(x) by the three-term recurrence. lambda == 0 uses the Chebyshev
/// convention C_k^0(x) = cos(k arccos x), which is the zonal basis on the circle.
double gegenbauer_eval(int k, double lambda, double x);

/// All of C_0^lambda(x) .. C_kmax^lambda(x) in one pass of the recurrence.
void gegenbauer_all(int kmax, double lambda, double x, std::span<double> out);

/// Jacobi P_m^{(alpha, beta)}(x) by the three-term recurrence.
double jacobi_eval(int m, double alpha, double beta, double x);

/// P_0^{(alpha,beta)}(x) .. P_mmax^{(alpha,beta)}(x) in one pass.
void jacobi_all(int mmax, double alpha, double beta, double x, std::span<double> out);

/// Value at x = 1: binom(m + alpha, m).
double jacobi_at_one(int m, double alpha);

/// Disk polynomial R^{(n-1)}_{j,k}(r e^{i phi}), normalized so that R_{j,k}(e^{i phi}) = e^{i (j-k) phi}.
std::complex<double> disk_poly_eval(int j, int k, int n, double r, double phi);

/// Radial factor r^{|j-k|} P_m^{(n-1,|j-k|)}(2r^2 - 1) / P_m^{(n-1,|j-k|)}(1), m = min(j, k).
double disk_poly_radial(int j, int k, int n, double r);

}  // namespace mto::specfun

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mtolab/quadrature.hpp"
#include "mtolab/records.hpp"

namespace mto::cr {

inline constexpr double kEndpointGuard = 1e-3;
inline constexpr double kDeficitTolerance = 1e-8;

/// One real basis function: R_{j,j}, or the real/imaginary part of R_{j,k} for j > k.
struct BasisEntry {
  enum class Part { Real, Imag };
  int j = 0;
  int k = 0;
  Part part = Part::Real;

  int shift() const noexcept { return j - k; }  // angular frequency
  bool pluriharmonic() const noexcept { return k == 0; }
};

/// Tensor grid on the disk: Gauss-Jacobi in s = 2r^2 - 1 with weight (1 - s)^{n-1}, times a
/// uniform angular grid.
struct DiskGrid {
  std::shared_ptr<const QuadratureRule> radial;
  int angular = 0;

  std::size_t size() const noexcept { return radial->size() * static_cast<std::size_t>(angular); }
  double phi(int a) const;
};

/// Torus-invariant functions on the CR sphere S^{2n+1}, i.e. functions of z_{n+1} = r e^{i phi},
/// in the disk-polynomial basis over bidegrees j, k <= J. Averages are CR-sphere averages,
/// which reduce to disk averages with weight (1 - r^2)^{n-1}.
class CRContext {
 public:
  /// Defaults: radial_points = 2J + 2, angular_points = 4J + 2.
  static std::shared_ptr<const CRContext> make(int n, int J, int radial_points = 0, int angular_points = 0);

  int dimension() const noexcept { return n_; }
  int homogeneous_dimension() const noexcept { return 2 * n_ + 2; }
  int truncation() const noexcept { return J_; }
  int basis_size() const noexcept { return static_cast<int>(entries_.size()); }
  const DiskGrid& grid() const noexcept { return grid_; }
  std::span<const BasisEntry> basis() const noexcept { return entries_; }
  std::span<const double> norm_table() const noexcept { return norms_; }

  /// Index of the entry (j, k, part); j >= k. Throws if outside the truncation.
  std::size_t index_of(int j, int k, BasisEntry::Part part = BasisEntry::Part::Real) const;

  /// Normalized radial factors of every basis entry at s = 2r^2 - 1.
  void radial_values(double s, std::span<double> out) const;
  /// Full basis values at a point.
  std::vector<double> basis_values(double r, double phi) const;

  DiskGrid oversampled_grid(int radial_points, int angular_points) const;

 private:
  CRContext(int n, int J, int radial_points, int angular_points);

  int n_;
  int J_;
  DiskGrid grid_;
  std::vector<BasisEntry> entries_;
  std::vector<double> norms_;
  std::vector<double> jacobi_one_;  // P_k^{(n-1, m)}(1) indexed [m * (J+1) + k]
};

using ContextPtr = std::shared_ptr<const CRContext>;

class DiskField {
 public:
  DiskField(ContextPtr ctx, std::vector<double> coeffs);

  static DiskField zero(ContextPtr ctx);
  static DiskField constant(ContextPtr ctx, double value);
  /// amplitude * Re(e^{-i phase} z^j) = amplitude r^j cos(j phi - phase), in raw (unnormalized) units.
  static DiskField pluriharmonic_mode(ContextPtr ctx, int j, double amplitude, double phase);

  const ContextPtr& context() const noexcept { return ctx_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t b) const { return coeffs_[b]; }

  /// Support inside bidegrees (j,0), (0,j), (0,0).
  bool is_pluriharmonic() const noexcept { return pluriharmonic_; }
  double mean() const { return coeffs_[0]; }
  double mean_square() const;
  double value(double r, double phi) const;

 private:
  ContextPtr ctx_;
  std::vector<double> coeffs_;
  bool pluriharmonic_ = false;
};

/// Eigenvalues over bidegrees (j, k), j, k <= J. Entries outside `domain` are undefined.
struct BidegreeSpectrum {
  ContextPtr ctx;
  std::vector<double> grid;         // (J+1) x (J+1), row j, column k
  std::vector<unsigned char> domain;  // 1 where defined
  std::string label;

  double at(int j, int k) const;
  bool defined(int j, int k) const;
};

/// lambda_j(d) = Gamma(j + (Q+d)/4) / Gamma(j + (Q-d)/4) for 0 < d <= Q; at d = Q the j = 0 value is 0.
double lambda_j(double d, int j, int Q);

BidegreeSpectrum spectrum_Ad(const ContextPtr& ctx, double d);
BidegreeSpectrum spectrum_L(const ContextPtr& ctx);
/// prod_{l=0}^{n} (j + l) on (j,0) and (0,j); undefined off the pluriharmonic bidegrees.
BidegreeSpectrum spectrum_AprimeQ(const ContextPtr& ctx);

/// Throws PluriharmonicityError if the field has support where the spectrum is undefined.
DiskField apply_bidegree(const DiskField& field, const BidegreeSpectrum& spectrum);
double quadratic_form(const DiskField& field, const BidegreeSpectrum& spectrum);

DiskField pluriharmonic_project(const DiskField& field);

DiskField analyze(const ContextPtr& ctx, std::span<const double> grid_values);
std::vector<double> synthesize_on_grid(const DiskField& field, const DiskGrid& grid);
/// Degree-J projection of a function of (r, phi), sampled on a grid twice the base size.
DiskField project(const ContextPtr& ctx, const std::function<double(double r, double phi)>& f);
double mean_on_grid(const DiskGrid& grid, std::span<const double> values);

struct AdaptiveOptions {
  double relative_tolerance = 1e-10;
  int max_radial = 1 << 11;
  int max_angular = 1 << 12;
};

struct AdaptiveLogMean {
  double log_mean = 0.0;
  QuadratureDiagnostics diagnostics;
};

/// ln of the sphere average of exp(g(field value)), with the max of g factored out. Radial and
/// angular resolution are doubled together, starting from the base grid, until the average moves
/// by less than the relative tolerance.
AdaptiveLogMean adaptive_log_mean_exp(const DiskField& field, const std::function<double(double)>& log_integrand,
                                      const AdaptiveOptions& options = {});

/// Projection of g(field) to bidegree <= J, sampled on a grid twice the base size.
DiskField map_project(const DiskField& field, const std::function<double(double)>& g);

double gram_deviation(const CRContext& ctx);

/// lambda_0(d)^2 (avg |v|^p)^{2/p} <= avg v A_d v, p = 2Q / (Q - d).
DeficitRecord cr_sobolev_pair(double d, const DiskField& v, std::string field = {});

/// (n!/Q) ln avg e^{Q F} <= avg F A'_Q F + n! avg F, for pluriharmonic F.
DeficitRecord cr_mto_pair(const DiskField& F, std::string field = {});

struct CREndpointFunctionals {
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 0.0;    // 4 / (Q - d)^2
  double lambda0 = 0.0;  // lambda_0(d)
  DeficitRecord sobolev;
};

/// v = e^{(Q-d)F/2} projected to bidegree <= J; LHS_d and RHS_d as normalized differences.
CREndpointFunctionals cr_endpoint_functionals(double d, const DiskField& F);
double cr_lhs_d(double d, const DiskField& F);
double cr_rhs_d(double d, const DiskField& F);

/// (n!/Q) ln avg e^{Q (F - mean F)}.
double cr_lhs_limit_target(const DiskField& F);
/// avg F A'_Q F.
double cr_rhs_limit_target(const DiskField& F);

LimitTable cr_limit_study(const DiskField& F, std::span<const double> ds, std::string field = {});

/// d_m = Q - gap * refine^{-m}, m = 1..steps.
std::vector<double> refined_d_sequence(int n, double d_gap, double refine, int steps);

}  // namespace mto::cr

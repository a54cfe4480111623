#pragma once

#include <span>
#include <string>
#include <vector>

#include "mtolab/records.hpp"
#include "mtolab/sphere.hpp"

namespace mto::sphere {

/// Closest admissible approach to the endpoint: n - 2 gamma >= kEndpointGuard.
inline constexpr double kEndpointGuard = 1e-3;
/// Default tolerance below which a negative deficit counts as a violation.
inline constexpr double kDeficitTolerance = 1e-8;

/// The four ingredients of the fractional Sobolev inequality for one field v.
struct SobolevTerms {
  double sharp_constant = 0.0;  // Y(n, gamma)
  double energy = 0.0;          // average of v P_gamma v
  double mean_square = 0.0;     // average of v^2
  double lp_term = 0.0;         // (average of |v|^p)^{2/p}, p = 2n / (n - 2 gamma)
  QuadratureDiagnostics diagnostics;
};

SobolevTerms sobolev_terms(double gamma, const ZonalField& v);

/// Y(n,gamma) (avg |v|^p)^{2/p} <= avg v P_gamma v.
DeficitRecord sobolev_pair(double gamma, const ZonalField& v, std::string field = {});

/// (2(n-1)!/n) ln avg e^{n w} <= avg (w P_{n/2} w + 2(n-1)! w). The exponential average is
/// always taken with the max of n w factored out.
DeficitRecord mto_pair(const ZonalField& w, std::string field = {});

/// v = exp(scale * w), projected to degree K.
ZonalField exponential_field(const ZonalField& w, double scale);

/// Both normalized endpoint functionals for v = e^{(n/2 - gamma) w}, plus the Sobolev record of v
/// they were built from.
struct EndpointFunctionals {
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 0.0;  // 4 / (n - 2 gamma)^2
  DeficitRecord sobolev;
};

/// Throws EndpointProximityError when n - 2 gamma < kEndpointGuard.
EndpointFunctionals endpoint_functionals(double gamma, const ZonalField& w);
double lhs_gamma(double gamma, const ZonalField& w);
double rhs_gamma(double gamma, const ZonalField& w);

/// (2(n-1)!/n) ln avg e^{n (w - mean w)}.
double lhs_limit_target(const ZonalField& w);
/// avg w P_{n/2} w.
double rhs_limit_target(const ZonalField& w);

/// Evaluates both functionals along an increasing gamma sequence and fits convergence orders
/// in the gap n - 2 gamma.
LimitTable limit_study(const ZonalField& w, std::span<const double> gammas, std::string field = {});

/// gamma_m = n/2 - gap * refine^{-m}, m = 1..steps.
std::vector<double> refined_gamma_sequence(int n, double gamma_gap, double refine, int steps);

/// Remainder f in v = 1 + (n/2 - gamma) w + (n - 2 gamma)^2 f, measured at the context's nodes.
struct TaylorRemainderReport {
  double sup_remainder = 0.0;           // max |f| over nodes
  double closed_form_discrepancy = 0.0; // max |f - (1/4) w^2 int_0^1 (1-s) e^{(n-2gamma) w s/2} ds|
  double bound = 0.0;                   // (1/8) sup w^2 e^{(n-2gamma) sup|w| / 2}
  bool within_bound = false;
};

TaylorRemainderReport taylor_remainder_check(double gamma, const ZonalField& w);

}  // namespace mto::sphere

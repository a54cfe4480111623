#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mto {

struct QuadratureDiagnostics {
  int points = 0;                     // finest oversampled rule used for nonlinear integrands
  double last_relative_change = 0.0;  // between the last two refinement levels
  bool capped = false;
};

/// One evaluation of a sharp inequality: lhs <= rhs, deficit = rhs - lhs.
struct DeficitRecord {
  std::string inequality;           // "sobolev", "mto", "cr_sobolev", "cr_mto"
  int n = 0;
  std::optional<double> parameter;  // gamma or d; empty at the endpoint (MTO)
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;
  std::string field;
  QuadratureDiagnostics diagnostics;
};

struct LimitRow {
  double parameter = 0.0;  // gamma or d
  double gap = 0.0;        // n - 2 gamma, or Q - d
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_target = 0.0;
  double rhs_target = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  double lhs_order_running = 0.0;  // NaN on the first row
  double rhs_order_running = 0.0;
};

/// Convergence of the endpoint functionals toward their limits.
struct LimitTable {
  std::string setting;  // "sphere" or "cr"
  int n = 0;
  std::string field;
  std::vector<LimitRow> rows;
  double lhs_order = 0.0;  // least-squares slope of ln(error) against ln(gap)
  double rhs_order = 0.0;
  double lhs_richardson = 0.0;  // first-order extrapolation from the last two rows
  double rhs_richardson = 0.0;
  double lhs_richardson_error = 0.0;
  double rhs_richardson_error = 0.0;
};

/// Least-squares slope of ln(y) against ln(x) over the pairs with y > 0. NaN with fewer than two.
double fitted_order(const std::vector<double>& x, const std::vector<double>& y);

/// Fills errors, running orders, fitted orders and Richardson estimates from lhs/rhs/targets.
void finalize_limit_table(LimitTable& table);

/// Errors at or below `floor` count as converged (roundoff level).
bool errors_nonincreasing(const LimitTable& table, std::size_t from_row = 2, double floor = 1e-13);

/// Largest error in either column.
double max_limit_error(const LimitTable& table);

}  // namespace mto

#include "mtolab/records.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mto {

double fitted_order(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

void finalize_limit_table(LimitTable& table) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> gaps, lerr, rerr;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    LimitRow& row = table.rows[i];
    row.lhs_error = std::abs(row.lhs - row.lhs_target);
    row.rhs_error = std::abs(row.rhs - row.rhs_target);
    row.lhs_order_running = nan;
    row.rhs_order_running = nan;
    if (i > 0) {
      const LimitRow& prev = table.rows[i - 1];
      const double lg = std::log(prev.gap / row.gap);
      if (row.lhs_error > 0.0 && prev.lhs_error > 0.0) {
        row.lhs_order_running = std::log(prev.lhs_error / row.lhs_error) / lg;
      }
      if (row.rhs_error > 0.0 && prev.rhs_error > 0.0) {
        row.rhs_order_running = std::log(prev.rhs_error / row.rhs_error) / lg;
      }
    }
    gaps.push_back(row.gap);
    lerr.push_back(row.lhs_error);
    rerr.push_back(row.rhs_error);
  }
  table.lhs_order = fitted_order(gaps, lerr);
  table.rhs_order = fitted_order(gaps, rerr);

  if (table.rows.size() >= 2) {
    const LimitRow& a = table.rows[table.rows.size() - 2];
    const LimitRow& b = table.rows.back();
    // value(gap) ~ limit + C gap  =>  limit ~ (r b - a) / (r - 1), r = gap_a / gap_b
    const double r = a.gap / b.gap;
    table.lhs_richardson = (r * b.lhs - a.lhs) / (r - 1.0);
    table.rhs_richardson = (r * b.rhs - a.rhs) / (r - 1.0);
    table.lhs_richardson_error = std::abs(table.lhs_richardson - b.lhs_target);
    table.rhs_richardson_error = std::abs(table.rhs_richardson - b.rhs_target);
  } else {
    table.lhs_richardson = table.rhs_richardson = nan;
    table.lhs_richardson_error = table.rhs_richardson_error = nan;
  }
}

bool errors_nonincreasing(const LimitTable& table, std::size_t from_row, double floor) {
  for (std::size_t i = std::max<std::size_t>(from_row, 1); i < table.rows.size(); ++i) {
    const LimitRow& prev = table.rows[i - 1];
    const LimitRow& row = table.rows[i];
    if (row.lhs_error > std::max(prev.lhs_error, floor)) return false;
    if (row.rhs_error > std::max(prev.rhs_error, floor)) return false;
  }
  return true;
}

double max_limit_error(const LimitTable& table) {
  double worst = 0.0;
  for (const auto& row : table.rows) worst = std::max({worst, row.lhs_error, row.rhs_error});
  return worst;
}

}  // namespace mto

#include "mtolab/cr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mtolab/errors.hpp"
#include "mtolab/specfun.hpp"

namespace mto::cr {

namespace {

double factorial(int m) { return specfun::rising_factorial(1.0, m); }

void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* where) {
  if (a != b) throw ContextMismatchError(std::string(where) + ": operands belong to different contexts");
}

void require_d(int Q, double d, const char* where) {
  if (!(d > 0.0) || !(d < Q)) {
    throw DomainError(std::string(where) + ": d = " + std::to_string(d) + " outside (0, Q)");
  }
  if (Q - d < kEndpointGuard) {
    throw EndpointProximityError(std::string(where) + ": Q - d = " + std::to_string(Q - d) +
                                 " is below the endpoint guard");
  }
}

// Angular cosine/sine tables for frequencies 0..mmax on an A-point grid: [m * A + a].
struct AngularTables {
  std::vector<double> cos;
  std::vector<double> sin;
};

AngularTables angular_tables(int mmax, int A) {
  AngularTables t;
  t.cos.resize(static_cast<std::size_t>(mmax + 1) * A);
  t.sin.resize(t.cos.size());
  for (int m = 0; m <= mmax; ++m) {
    for (int a = 0; a < A; ++a) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(m) * a / A;
      t.cos[static_cast<std::size_t>(m) * A + a] = std::cos(ang);
      t.sin[static_cast<std::size_t>(m) * A + a] = std::sin(ang);
    }
  }
  return t;
}

}  // namespace

double DiskGrid::phi(int a) const { return 2.0 * std::numbers::pi * a / angular; }

CRContext::CRContext(int n, int J, int radial_points, int angular_points) : n_(n), J_(J) {
  grid_.radial = cached_gauss_jacobi_rule(radial_points, n - 1.0, 0.0);
  grid_.angular = angular_points;

  for (int j = 0; j <= J_; ++j) {
    for (int k = 0; k <= j; ++k) {
      entries_.push_back({j, k, BasisEntry::Part::Real});
      if (j > k) entries_.push_back({j, k, BasisEntry::Part::Imag});
    }
  }
  jacobi_one_.resize(static_cast<std::size_t>(J_ + 1) * (J_ + 1));
  for (int m = 0; m <= J_; ++m) {
    for (int k = 0; k + m <= J_; ++k) jacobi_one_[m * (J_ + 1) + k] = specfun::jacobi_at_one(k, n_ - 1.0);
  }

  // Normalization by quadrature on the base grid; radial_values is raw while norms_ are all 1.
  norms_.assign(entries_.size(), 1.0);
  const auto& rule = *grid_.radial;
  const double mass = rule.total_mass();
  const AngularTables ang = angular_tables(J_, grid_.angular);
  std::vector<double> raw(entries_.size());
  std::vector<double> radial_sq(entries_.size(), 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    radial_values(rule.nodes[i], raw);
    for (std::size_t b = 0; b < entries_.size(); ++b) radial_sq[b] += rule.weights[i] * raw[b] * raw[b];
  }
  for (std::size_t b = 0; b < entries_.size(); ++b) {
    const int m = entries_[b].shift();
    const auto& tab = entries_[b].part == BasisEntry::Part::Real ? ang.cos : ang.sin;
    double ang_sq = 0.0;
    for (int a = 0; a < grid_.angular; ++a) {
      const double t = tab[static_cast<std::size_t>(m) * grid_.angular + a];
      ang_sq += t * t;
    }
    ang_sq /= grid_.angular;
    norms_[b] = 1.0 / std::sqrt(radial_sq[b] / mass * ang_sq);
  }
}

std::shared_ptr<const CRContext> CRContext::make(int n, int J, int radial_points, int angular_points) {
  if (n < 1) throw ParameterError("CRContext: CR dimension n must be >= 1");
  if (J < 1) throw ParameterError("CRContext: truncation J must be >= 1");
  if (radial_points == 0) radial_points = 2 * J + 2;
  if (angular_points == 0) angular_points = 4 * J + 2;
  if (radial_points < J + 1) throw ParameterError("CRContext: radial rule must have at least J + 1 points");
  if (angular_points < 4 * J + 2) throw ParameterError("CRContext: angular grid must have at least 4J + 2 points");
  return std::shared_ptr<const CRContext>(new CRContext(n, J, radial_points, angular_points));
}

std::size_t CRContext::index_of(int j, int k, BasisEntry::Part part) const {
  if (j < k) {
    throw ParameterError("CRContext::index_of: use j >= k (the conjugate bidegree shares the real basis)");
  }
  if (k < 0 || j > J_) throw ParameterError("CRContext::index_of: bidegree outside the truncation");
  if (j == k && part == BasisEntry::Part::Imag) throw ParameterError("CRContext::index_of: R_{j,j} is real");
  // Entries for rows 0..j-1 occupy j^2 slots; within row j, (j,k) real sits at 2k.
  const std::size_t base = static_cast<std::size_t>(j) * j + 2 * static_cast<std::size_t>(k);
  return base + (part == BasisEntry::Part::Imag ? 1 : 0);
}

void CRContext::radial_values(double s, std::span<double> out) const {
  const double r = std::sqrt(std::max(0.0, 0.5 * (1.0 + s)));
  std::vector<double> p(static_cast<std::size_t>(J_) + 1);
  double rpow = 1.0;
  for (int m = 0; m <= J_; ++m) {
    specfun::jacobi_all(J_ - m, n_ - 1.0, m, s, p);
    for (int k = 0; k + m <= J_; ++k) {
      const double v = rpow * p[k] / jacobi_one_[m * (J_ + 1) + k];
      const std::size_t b = index_of(k + m, k, BasisEntry::Part::Real);
      out[b] = v * norms_[b];
      if (m > 0) out[b + 1] = v * norms_[b + 1];
    }
    rpow *= r;
  }
}

std::vector<double> CRContext::basis_values(double r, double phi) const {
  if (r < 0.0 || r > 1.0) throw DomainError("CRContext::basis_values: r outside [0, 1]");
  std::vector<double> out(entries_.size());
  radial_values(2.0 * r * r - 1.0, out);
  for (std::size_t b = 0; b < entries_.size(); ++b) {
    const int m = entries_[b].shift();
    out[b] *= entries_[b].part == BasisEntry::Part::Real ? std::cos(m * phi) : std::sin(m * phi);
  }
  return out;
}

DiskGrid CRContext::oversampled_grid(int radial_points, int angular_points) const {
  return {cached_gauss_jacobi_rule(radial_points, n_ - 1.0, 0.0), angular_points};
}

DiskField::DiskField(ContextPtr ctx, std::vector<double> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (!ctx_) throw ParameterError("DiskField: null context");
  if (coeffs_.size() != static_cast<std::size_t>(ctx_->basis_size())) {
    throw SizeMismatchError("DiskField: expected " + std::to_string(ctx_->basis_size()) + " coefficients, got " +
                            std::to_string(coeffs_.size()));
  }
  pluriharmonic_ = true;
  const auto entries = ctx_->basis();
  for (std::size_t b = 0; b < coeffs_.size(); ++b) {
    if (coeffs_[b] != 0.0 && !entries[b].pluriharmonic()) {
      pluriharmonic_ = false;
      break;
    }
  }
}

DiskField DiskField::zero(ContextPtr ctx) {
  const auto nb = static_cast<std::size_t>(ctx->basis_size());
  return DiskField(std::move(ctx), std::vector<double>(nb, 0.0));
}

DiskField DiskField::constant(ContextPtr ctx, double value) {
  std::vector<double> c(static_cast<std::size_t>(ctx->basis_size()), 0.0);
  c[0] = value;
  return DiskField(std::move(ctx), std::move(c));
}

DiskField DiskField::pluriharmonic_mode(ContextPtr ctx, int j, double amplitude, double phase) {
  if (j < 0 || j > ctx->truncation()) throw ParameterError("pluriharmonic_mode: degree outside [0, J]");
  std::vector<double> c(static_cast<std::size_t>(ctx->basis_size()), 0.0);
  const auto norms = ctx->norm_table();
  const std::size_t re = ctx->index_of(j, 0, BasisEntry::Part::Real);
  c[re] = amplitude * std::cos(phase) / norms[re];
  if (j > 0) {
    const std::size_t im = ctx->index_of(j, 0, BasisEntry::Part::Imag);
    c[im] = amplitude * std::sin(phase) / norms[im];
  }
  return DiskField(std::move(ctx), std::move(c));
}

double DiskField::mean_square() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

double DiskField::value(double r, double phi) const {
  const std::vector<double> e = ctx_->basis_values(r, phi);
  double v = 0.0;
  for (std::size_t b = 0; b < e.size(); ++b) v += coeffs_[b] * e[b];
  return v;
}

double BidegreeSpectrum::at(int j, int k) const {
  const int J = ctx->truncation();
  return grid[static_cast<std::size_t>(j) * (J + 1) + k];
}

bool BidegreeSpectrum::defined(int j, int k) const {
  const int J = ctx->truncation();
  return domain[static_cast<std::size_t>(j) * (J + 1) + k] != 0;
}

double lambda_j(double d, int j, int Q) {
  if (!(d > 0.0) || d > Q) throw DomainError("lambda_j: d = " + std::to_string(d) + " outside (0, Q]");
  if (j < 0) throw ParameterError("lambda_j: negative degree");
  if (d == Q) return j == 0 ? 0.0 : specfun::gamma_ratio(j + 0.5 * Q, j);
  return specfun::gamma_ratio(j + 0.25 * (Q + d), j + 0.25 * (Q - d));
}

namespace {

BidegreeSpectrum make_spectrum(const ContextPtr& ctx, std::string label) {
  const auto side = static_cast<std::size_t>(ctx->truncation() + 1);
  return {ctx, std::vector<double>(side * side, 0.0), std::vector<unsigned char>(side * side, 1), std::move(label)};
}

}  // namespace

BidegreeSpectrum spectrum_Ad(const ContextPtr& ctx, double d) {
  const int Q = ctx->homogeneous_dimension();
  if (!(d > 0.0) || !(d < Q)) throw DomainError("spectrum_Ad: d = " + std::to_string(d) + " outside (0, Q)");
  const int J = ctx->truncation();
  BidegreeSpectrum s = make_spectrum(ctx, "A_d(" + std::to_string(d) + ")");
  std::vector<double> lam(static_cast<std::size_t>(J) + 1);
  for (int j = 0; j <= J; ++j) lam[j] = lambda_j(d, j, Q);
  for (int j = 0; j <= J; ++j) {
    for (int k = 0; k <= J; ++k) s.grid[static_cast<std::size_t>(j) * (J + 1) + k] = lam[j] * lam[k];
  }
  return s;
}

BidegreeSpectrum spectrum_L(const ContextPtr& ctx) {
  const int J = ctx->truncation();
  const double half_n = 0.5 * ctx->dimension();
  BidegreeSpectrum s = make_spectrum(ctx, "L");
  for (int j = 0; j <= J; ++j) {
    for (int k = 0; k <= J; ++k) {
      s.grid[static_cast<std::size_t>(j) * (J + 1) + k] = static_cast<double>(j) * k + half_n * (j + k);
    }
  }
  return s;
}

BidegreeSpectrum spectrum_AprimeQ(const ContextPtr& ctx) {
  const int J = ctx->truncation();
  const int n = ctx->dimension();
  BidegreeSpectrum s = make_spectrum(ctx, "A'_Q");
  for (int j = 0; j <= J; ++j) {
    for (int k = 0; k <= J; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j) * (J + 1) + k;
      if (j != 0 && k != 0) {
        s.grid[idx] = std::numeric_limits<double>::quiet_NaN();
        s.domain[idx] = 0;
        continue;
      }
      s.grid[idx] = specfun::rising_factorial(j + k, n + 1);
    }
  }
  return s;
}

namespace {

void require_domain(const DiskField& field, const BidegreeSpectrum& spectrum, const char* where) {
  require_same_context(field.context(), spectrum.ctx, where);
  const auto entries = field.context()->basis();
  const auto c = field.coeffs();
  for (std::size_t b = 0; b < c.size(); ++b) {
    if (c[b] != 0.0 && !spectrum.defined(entries[b].j, entries[b].k)) {
      throw PluriharmonicityError(std::string(where) + ": " + spectrum.label + " is undefined on bidegree (" +
                                  std::to_string(entries[b].j) + "," + std::to_string(entries[b].k) +
                                  "); the field is not CR-pluriharmonic");
    }
  }
}

}  // namespace

DiskField apply_bidegree(const DiskField& field, const BidegreeSpectrum& spectrum) {
  require_domain(field, spectrum, "apply_bidegree");
  const auto entries = field.context()->basis();
  std::vector<double> c(field.coeffs().begin(), field.coeffs().end());
  for (std::size_t b = 0; b < c.size(); ++b) {
    if (c[b] != 0.0) c[b] *= spectrum.at(entries[b].j, entries[b].k);
  }
  return DiskField(field.context(), std::move(c));
}

double quadratic_form(const DiskField& field, const BidegreeSpectrum& spectrum) {
  require_domain(field, spectrum, "quadratic_form");
  const auto entries = field.context()->basis();
  const auto c = field.coeffs();
  double s = 0.0;
  for (std::size_t b = 0; b < c.size(); ++b) {
    if (c[b] != 0.0) s += spectrum.at(entries[b].j, entries[b].k) * c[b] * c[b];
  }
  return s;
}

DiskField pluriharmonic_project(const DiskField& field) {
  const auto entries = field.context()->basis();
  std::vector<double> c(field.coeffs().begin(), field.coeffs().end());
  for (std::size_t b = 0; b < c.size(); ++b) {
    if (!entries[b].pluriharmonic()) c[b] = 0.0;
  }
  return DiskField(field.context(), std::move(c));
}

namespace {

DiskField analyze_on_grid(const ContextPtr& ctx, const DiskGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw SizeMismatchError("analyze: expected " + std::to_string(grid.size()) + " grid values, got " +
                            std::to_string(values.size()));
  }
  const int J = ctx->truncation();
  const int A = grid.angular;
  const auto& rule = *grid.radial;
  const auto entries = ctx->basis();
  const AngularTables ang = angular_tables(J, A);
  std::vector<double> c(entries.size(), 0.0);
  std::vector<double> rad(entries.size());
  std::vector<double> fc(static_cast<std::size_t>(J) + 1);
  std::vector<double> fs(static_cast<std::size_t>(J) + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double* row = values.data() + i * static_cast<std::size_t>(A);
    for (int m = 0; m <= J; ++m) {
      double sc = 0.0, ss = 0.0;
      for (int a = 0; a < A; ++a) {
        sc += row[a] * ang.cos[static_cast<std::size_t>(m) * A + a];
        ss += row[a] * ang.sin[static_cast<std::size_t>(m) * A + a];
      }
      fc[m] = sc / A;
      fs[m] = ss / A;
    }
    ctx->radial_values(rule.nodes[i], rad);
    for (std::size_t b = 0; b < entries.size(); ++b) {
      const int m = entries[b].shift();
      c[b] += rule.weights[i] * rad[b] * (entries[b].part == BasisEntry::Part::Real ? fc[m] : fs[m]);
    }
  }
  const double mass = rule.total_mass();
  for (double& cb : c) cb /= mass;
  return DiskField(ctx, std::move(c));
}

double log_mean_exp_on_grid(const DiskGrid& grid, std::span<const double> values,
                            const std::function<double(double)>& g) {
  const auto& rule = *grid.radial;
  const int A = grid.angular;
  std::vector<double> gv(values.size());
  double gmax = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < values.size(); ++p) {
    gv[p] = g(values[p]);
    gmax = std::max(gmax, gv[p]);
  }
  if (gmax == -std::numeric_limits<double>::infinity()) return gmax;
  double num = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double row = 0.0;
    for (int a = 0; a < A; ++a) row += std::exp(gv[i * static_cast<std::size_t>(A) + a] - gmax);
    num += rule.weights[i] * row / A;
  }
  return gmax + std::log(num / rule.total_mass());
}

}  // namespace

DiskField analyze(const ContextPtr& ctx, std::span<const double> grid_values) {
  return analyze_on_grid(ctx, ctx->grid(), grid_values);
}

std::vector<double> synthesize_on_grid(const DiskField& field, const DiskGrid& grid) {
  const auto& ctx = *field.context();
  const int J = ctx.truncation();
  const int A = grid.angular;
  const auto& rule = *grid.radial;
  const auto entries = ctx.basis();
  const auto coeffs = field.coeffs();
  const AngularTables ang = angular_tables(J, A);
  std::vector<double> out(grid.size());
  std::vector<double> rad(entries.size());
  std::vector<double> cm(static_cast<std::size_t>(J) + 1);
  std::vector<double> sm(static_cast<std::size_t>(J) + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    ctx.radial_values(rule.nodes[i], rad);
    std::fill(cm.begin(), cm.end(), 0.0);
    std::fill(sm.begin(), sm.end(), 0.0);
    for (std::size_t b = 0; b < entries.size(); ++b) {
      if (coeffs[b] == 0.0) continue;
      auto& acc = entries[b].part == BasisEntry::Part::Real ? cm : sm;
      acc[entries[b].shift()] += coeffs[b] * rad[b];
    }
    for (int a = 0; a < A; ++a) {
      double v = 0.0;
      for (int m = 0; m <= J; ++m) {
        v += cm[m] * ang.cos[static_cast<std::size_t>(m) * A + a] + sm[m] * ang.sin[static_cast<std::size_t>(m) * A + a];
      }
      out[i * static_cast<std::size_t>(A) + a] = v;
    }
  }
  return out;
}

DiskField project(const ContextPtr& ctx, const std::function<double(double, double)>& f) {
  const DiskGrid grid = ctx->oversampled_grid(2 * static_cast<int>(ctx->grid().radial->size()), 2 * ctx->grid().angular);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.radial->size(); ++i) {
    const double r = std::sqrt(std::max(0.0, 0.5 * (1.0 + grid.radial->nodes[i])));
    for (int a = 0; a < grid.angular; ++a) vals[i * static_cast<std::size_t>(grid.angular) + a] = f(r, grid.phi(a));
  }
  return analyze_on_grid(ctx, grid, vals);
}

DiskField map_project(const DiskField& field, const std::function<double(double)>& g) {
  const auto& ctx = field.context();
  const DiskGrid grid = ctx->oversampled_grid(2 * static_cast<int>(ctx->grid().radial->size()), 2 * ctx->grid().angular);
  std::vector<double> vals = synthesize_on_grid(field, grid);
  for (double& v : vals) v = g(v);
  return analyze_on_grid(ctx, grid, vals);
}

double mean_on_grid(const DiskGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw SizeMismatchError("mean_on_grid: value count does not match grid");
  const auto& rule = *grid.radial;
  double num = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double row = 0.0;
    for (int a = 0; a < grid.angular; ++a) row += values[i * static_cast<std::size_t>(grid.angular) + a];
    num += rule.weights[i] * row / grid.angular;
  }
  return num / rule.total_mass();
}

AdaptiveLogMean adaptive_log_mean_exp(const DiskField& field, const std::function<double(double)>& log_integrand,
                                      const AdaptiveOptions& options) {
  const auto& ctx = *field.context();
  int radial = static_cast<int>(ctx.grid().radial->size());
  int angular = ctx.grid().angular;
  auto level = [&](int nr, int na) {
    const DiskGrid grid = ctx.oversampled_grid(nr, na);
    return log_mean_exp_on_grid(grid, synthesize_on_grid(field, grid), log_integrand);
  };
  AdaptiveLogMean result;
  double previous = level(radial, angular);
  while (true) {
    if (2 * radial > options.max_radial || 2 * angular > options.max_angular) {
      result.diagnostics.capped = true;
      break;
    }
    radial *= 2;
    angular *= 2;
    const double current = level(radial, angular);
    result.diagnostics.last_relative_change = std::abs(std::expm1(current - previous));
    previous = current;
    if (result.diagnostics.last_relative_change < options.relative_tolerance || !std::isfinite(current)) break;
  }
  result.log_mean = previous;
  result.diagnostics.points = radial * angular;
  return result;
}

double gram_deviation(const CRContext& ctx) {
  const auto& grid = ctx.grid();
  const auto& rule = *grid.radial;
  const int A = grid.angular;
  const auto entries = ctx.basis();
  const std::size_t nb = entries.size();
  // Basis values on the whole grid, (point, entry).
  std::vector<double> table(grid.size() * nb);
  std::vector<double> rad(nb);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    ctx.radial_values(rule.nodes[i], rad);
    for (int a = 0; a < A; ++a) {
      const double phi = grid.phi(a);
      double* row = table.data() + (i * static_cast<std::size_t>(A) + a) * nb;
      for (std::size_t b = 0; b < nb; ++b) {
        const int m = entries[b].shift();
        row[b] = rad[b] * (entries[b].part == BasisEntry::Part::Real ? std::cos(m * phi) : std::sin(m * phi));
      }
    }
  }
  const double mass = rule.total_mass();
  std::vector<double> gram(nb * nb, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double w = rule.weights[i] / (A * mass);
    for (int a = 0; a < A; ++a) {
      const double* row = table.data() + (i * static_cast<std::size_t>(A) + a) * nb;
      for (std::size_t p = 0; p < nb; ++p) {
        const double wp = w * row[p];
        for (std::size_t q = p; q < nb; ++q) gram[p * nb + q] += wp * row[q];
      }
    }
  }
  double worst = 0.0;
  for (std::size_t p = 0; p < nb; ++p) {
    for (std::size_t q = p; q < nb; ++q) worst = std::max(worst, std::abs(gram[p * nb + q] - (p == q ? 1.0 : 0.0)));
  }
  return worst;
}

DeficitRecord cr_sobolev_pair(double d, const DiskField& v, std::string field) {
  const auto& ctx = v.context();
  const int Q = ctx->homogeneous_dimension();
  require_d(Q, d, "cr_sobolev_pair");
  const auto c = v.coeffs();
  if (std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; })) {
    throw DomainError("cr_sobolev_pair: v is identically zero");
  }
  const double p = 2.0 * Q / (Q - d);
  const double lam0 = lambda_j(d, 0, Q);
  const AdaptiveLogMean lp = adaptive_log_mean_exp(v, [&](double x) {
    const double a = std::abs(x);
    return a == 0.0 ? -std::numeric_limits<double>::infinity() : p * std::log(a);
  });
  DeficitRecord r;
  r.inequality = "cr_sobolev";
  r.n = ctx->dimension();
  r.parameter = d;
  r.lhs = lam0 * lam0 * std::exp((2.0 / p) * lp.log_mean);
  r.rhs = quadratic_form(v, spectrum_Ad(ctx, d));
  r.deficit = r.rhs - r.lhs;
  r.field = std::move(field);
  r.diagnostics = lp.diagnostics;
  return r;
}

DeficitRecord cr_mto_pair(const DiskField& F, std::string field) {
  if (!F.is_pluriharmonic()) {
    throw PluriharmonicityError("cr_mto_pair: F must be CR-pluriharmonic");
  }
  const auto& ctx = F.context();
  const int n = ctx->dimension();
  const int Q = ctx->homogeneous_dimension();
  const double nfact = factorial(n);
  const AdaptiveLogMean em = adaptive_log_mean_exp(F, [&](double x) { return Q * x; });
  DeficitRecord r;
  r.inequality = "cr_mto";
  r.n = n;
  r.lhs = nfact / Q * em.log_mean;
  r.rhs = quadratic_form(F, spectrum_AprimeQ(ctx)) + nfact * F.mean();
  r.deficit = r.rhs - r.lhs;
  r.field = std::move(field);
  r.diagnostics = em.diagnostics;
  return r;
}

CREndpointFunctionals cr_endpoint_functionals(double d, const DiskField& F) {
  if (!F.is_pluriharmonic()) throw PluriharmonicityError("cr_endpoint_functionals: F must be CR-pluriharmonic");
  const auto& ctx = F.context();
  const int Q = ctx->homogeneous_dimension();
  require_d(Q, d, "cr_endpoint_functionals");
  const double gap = Q - d;
  const DiskField v = map_project(F, [&](double x) { return std::exp(0.5 * gap * x); });

  const double p = 2.0 * Q / gap;
  const double lam0 = lambda_j(d, 0, Q);
  const AdaptiveLogMean lp = adaptive_log_mean_exp(v, [&](double x) {
    const double a = std::abs(x);
    return a == 0.0 ? -std::numeric_limits<double>::infinity() : p * std::log(a);
  });
  const double lp_term = std::exp((2.0 / p) * lp.log_mean);
  const double energy = quadratic_form(v, spectrum_Ad(ctx, d));
  const double mean_square = v.mean_square();

  CREndpointFunctionals out;
  out.scale = 4.0 / (gap * gap);
  out.lambda0 = lam0;
  out.lhs = out.scale * lam0 * (lp_term - mean_square);
  out.rhs = out.scale / lam0 * (energy - lam0 * lam0 * mean_square);
  out.sobolev.inequality = "cr_sobolev";
  out.sobolev.n = ctx->dimension();
  out.sobolev.parameter = d;
  out.sobolev.lhs = lam0 * lam0 * lp_term;
  out.sobolev.rhs = energy;
  out.sobolev.deficit = energy - lam0 * lam0 * lp_term;
  out.sobolev.diagnostics = lp.diagnostics;
  return out;
}

double cr_lhs_d(double d, const DiskField& F) { return cr_endpoint_functionals(d, F).lhs; }

double cr_rhs_d(double d, const DiskField& F) { return cr_endpoint_functionals(d, F).rhs; }

double cr_lhs_limit_target(const DiskField& F) {
  const int n = F.context()->dimension();
  const int Q = F.context()->homogeneous_dimension();
  const double mean = F.mean();
  const AdaptiveLogMean em = adaptive_log_mean_exp(F, [&](double x) { return Q * (x - mean); });
  return factorial(n) / Q * em.log_mean;
}

double cr_rhs_limit_target(const DiskField& F) { return quadratic_form(F, spectrum_AprimeQ(F.context())); }

LimitTable cr_limit_study(const DiskField& F, std::span<const double> ds, std::string field) {
  for (std::size_t i = 1; i < ds.size(); ++i) {
    if (!(ds[i] > ds[i - 1])) throw ParameterError("cr_limit_study: d sequence must be strictly increasing");
  }
  const int Q = F.context()->homogeneous_dimension();
  LimitTable table;
  table.setting = "cr";
  table.n = F.context()->dimension();
  table.field = std::move(field);
  const double lt = cr_lhs_limit_target(F);
  const double rt = cr_rhs_limit_target(F);
  for (double d : ds) {
    const CREndpointFunctionals ef = cr_endpoint_functionals(d, F);
    LimitRow row;
    row.parameter = d;
    row.gap = Q - d;
    row.lhs = ef.lhs;
    row.rhs = ef.rhs;
    row.lhs_target = lt;
    row.rhs_target = rt;
    table.rows.push_back(row);
  }
  finalize_limit_table(table);
  return table;
}

std::vector<double> refined_d_sequence(int n, double d_gap, double refine, int steps) {
  if (!(refine > 1.0) || steps < 1 || !(d_gap > 0.0)) {
    throw ParameterError("refined_d_sequence: need gap > 0, refine > 1, steps >= 1");
  }
  const int Q = 2 * n + 2;
  std::vector<double> out;
  for (int m = 1; m <= steps; ++m) {
    const double d = Q - d_gap * std::pow(refine, -m);
    require_d(Q, d, "refined_d_sequence");
    out.push_back(d);
  }
  return out;
}

}  // namespace mto::cr

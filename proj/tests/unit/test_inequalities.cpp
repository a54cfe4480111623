#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "mtolab/errors.hpp"
#include "mtolab/inequalities.hpp"
#include "mtolab/random_fields.hpp"

using namespace mto;
using namespace mto::sphere;

namespace {

ZonalField two_mode(const ContextPtr& ctx, double a1, double a3) {
  auto w = ZonalField::zero(ctx);
  w.mutable_coeffs()[1] = a1;
  w.mutable_coeffs()[3] = a3;
  return w;
}

double factorial(int m) { return std::tgamma(m + 1.0); }

}  // namespace

TEST_CASE("equality at constants") {
  for (int n = 1; n <= 4; ++n) {
    const auto ctx = SphereContext::make(n, 6, 14);
    for (double frac : {0.2, 0.5, 0.9}) {
      const double gamma = frac * 0.5 * n;
      for (double c : {1.0, 0.3, -2.0}) {
        const auto rec = sobolev_pair(gamma, ZonalField::constant(ctx, c));
        CHECK(std::abs(rec.deficit) <= 1e-10);
        CHECK(rec.lhs == doctest::Approx(sharp_sobolev_constant(n, gamma) * c * c).epsilon(1e-12));
      }
    }
    const auto z = mto_pair(ZonalField::zero(ctx));
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    const auto m = mto_pair(ZonalField::constant(ctx, 0.7));
    CHECK(m.lhs == doctest::Approx(2 * factorial(n - 1) * 0.7).epsilon(1e-13));
    CHECK(m.rhs == doctest::Approx(2 * factorial(n - 1) * 0.7).epsilon(1e-13));
    CHECK(!m.parameter.has_value());
  }
}

TEST_CASE("sobolev_pair errors") {
  const auto ctx = SphereContext::make(2, 6, 14);
  CHECK_THROWS_AS(sobolev_pair(0.5, ZonalField::zero(ctx)), DomainError);
  CHECK_THROWS_AS(sobolev_pair(1.0, ZonalField::constant(ctx, 1.0)), DomainError);
  CHECK_THROWS_AS(sobolev_pair(0.0, ZonalField::constant(ctx, 1.0)), DomainError);
}

TEST_CASE("Sobolev deficit of exp(0.3 e_1) on S^2 is positive and resolution independent") {
  const auto coarse = SphereContext::make(2, 24, 50);
  const auto fine = SphereContext::make(2, 48, 98);
  const auto v1 = exponential_field(ZonalField::mode(coarse, 1, 0.3), 1.0);
  const auto v2 = exponential_field(ZonalField::mode(fine, 1, 0.3), 1.0);
  const auto r1 = sobolev_pair(0.5, v1);
  const auto r2 = sobolev_pair(0.5, v2);
  CHECK(r1.deficit > 0.0);
  CHECK(std::abs(r1.deficit - r2.deficit) <= 1e-9);
  CHECK(std::abs(r1.lhs - r2.lhs) <= 1e-9);
  CHECK(r1.diagnostics.points >= 96);
  CHECK(r1.diagnostics.last_relative_change < 1e-10);
}

TEST_CASE("MTO pair for w = 0.4 e_1 on S^2 against closed form") {
  const auto ctx = SphereContext::make(2, 16, 34);
  const auto rec = mto_pair(ZonalField::mode(ctx, 1, 0.4));
  // e_1 = sqrt(3) x, avg e^{b x} = sinh(b)/b
  const double b = 0.8 * std::sqrt(3.0);
  CHECK(rec.lhs == doctest::Approx(std::log(std::sinh(b) / b)).epsilon(1e-12));
  CHECK(rec.rhs == doctest::Approx(0.32).epsilon(1e-13));
  CHECK(rec.deficit > 0.0);
  const auto fine = mto_pair(ZonalField::mode(SphereContext::make(2, 32, 66), 1, 0.4));
  CHECK(std::abs(fine.deficit - rec.deficit) <= 1e-9);
}

TEST_CASE("MTO overflow guard") {
  const auto ctx = SphereContext::make(3, 4, 10);
  const auto rec = mto_pair(ZonalField::constant(ctx, 300.0));
  CHECK(std::isfinite(rec.lhs));
  CHECK(rec.lhs == doctest::Approx(1200.0).epsilon(1e-13));
  CHECK(rec.rhs == doctest::Approx(1200.0).epsilon(1e-13));
  auto w = ZonalField::constant(ctx, 400.0);
  w.mutable_coeffs()[1] = 1.0;
  const auto r2 = mto_pair(w);
  CHECK(std::isfinite(r2.lhs));
  CHECK(r2.deficit >= -1e-8 * std::abs(r2.rhs));
}

TEST_CASE("random fields: deficits are nonnegative") {
  for (int n = 1; n <= 4; ++n) {
    const auto ctx = SphereContext::make(n, 10, 22);
    for (double frac : {0.2, 0.5, 0.9}) {
      const double gamma = frac * 0.5 * n;
      for (std::uint64_t s = 0; s < 10; ++s) {
        const auto w = random_zonal_field(ctx, 10, 31 * n + s);
        CHECK(sobolev_pair(gamma, exponential_field(w, 1.0)).deficit >= -1e-8);
        CHECK(mto_pair(w).deficit >= -1e-8);
      }
    }
  }
}

TEST_CASE("endpoint functionals") {
  const auto ctx = SphereContext::make(2, 24, 50);
  CHECK(lhs_gamma(0.9, ZonalField::zero(ctx)) == doctest::Approx(0.0));
  CHECK(rhs_gamma(0.9, ZonalField::zero(ctx)) == doctest::Approx(0.0));
  const auto c = ZonalField::constant(ctx, 0.6);
  CHECK(std::abs(lhs_gamma(0.9, c)) <= 1e-10);
  CHECK(std::abs(rhs_gamma(0.9, c)) <= 1e-10);

  const auto w = ZonalField::mode(ctx, 1, 0.5);
  const auto e = endpoint_functionals(0.9, w);
  CHECK(std::isfinite(e.lhs));
  CHECK(std::isfinite(e.rhs));
  CHECK(e.rhs - e.lhs > 0.0);
  CHECK(e.scale == doctest::Approx(4.0 / 0.04));
  const auto fine = endpoint_functionals(0.9, ZonalField::mode(SphereContext::make(2, 48, 98), 1, 0.5));
  CHECK(std::abs(fine.lhs - e.lhs) <= 1e-9);
  CHECK(std::abs(fine.rhs - e.rhs) <= 1e-9);

  CHECK_THROWS_AS(lhs_gamma(1.0 - 4e-4, w), EndpointProximityError);
  CHECK_NOTHROW(lhs_gamma(1.0 - 6e-4, w));
}

TEST_CASE("bridge identity") {
  for (int n = 1; n <= 3; ++n) {
    const auto ctx = SphereContext::make(n, 32, 66);
    const auto w = two_mode(ctx, 0.5, 0.3);
    for (double gamma : refined_gamma_sequence(n, 0.4, 2.0, 8)) {
      const auto e = endpoint_functionals(gamma, w);
      const double eps = n - 2.0 * gamma;
      const double scale = std::max({std::abs(e.sobolev.lhs), std::abs(e.sobolev.rhs), 1.0});
      CHECK(std::abs((e.rhs - e.lhs) * eps * eps / 4.0 - e.sobolev.deficit) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("limit targets") {
  const auto c1 = SphereContext::make(1, 16, 34);
  CHECK(rhs_limit_target(ZonalField::mode(c1, 1, 0.5)) == doctest::Approx(0.25).epsilon(1e-14));

  const auto ctx = SphereContext::make(2, 16, 34);
  auto w = two_mode(ctx, 0.5, 0.3);
  const double base = lhs_limit_target(w);
  w.mutable_coeffs()[0] += 1.7;
  CHECK(std::abs(lhs_limit_target(w) - base) <= 1e-12);
}

TEST_CASE("limit study: constants give zero error") {
  const auto ctx = SphereContext::make(2, 8, 18);
  const auto t = limit_study(ZonalField::constant(ctx, 0.4), refined_gamma_sequence(2, 0.4, 2.0, 5), "const");
  CHECK(t.rows.size() == 5);
  CHECK(max_limit_error(t) <= 1e-10);
  CHECK(t.setting == "sphere");
}

TEST_CASE("limit study converges at first order") {
  const auto ctx = SphereContext::make(2, 32, 66);
  const auto gammas = refined_gamma_sequence(2, 0.4, 2.0, 8);
  REQUIRE(gammas.size() == 8);
  CHECK(gammas[0] == doctest::Approx(0.8));
  CHECK(gammas[7] == doctest::Approx(1.0 - 0.4 / 256));
  const auto t = limit_study(two_mode(ctx, 0.5, 0.3), gammas);
  CHECK(t.lhs_order == doctest::Approx(1.0).epsilon(0.3));
  CHECK(t.rhs_order == doctest::Approx(1.0).epsilon(0.3));
  CHECK(errors_nonincreasing(t));
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].lhs_error / t.rows[i - 1].lhs_error == doctest::Approx(0.5).epsilon(0.25));
  }
  // Richardson removes most of the first-order error
  CHECK(t.lhs_richardson_error < 0.1 * t.rows.back().lhs_error);
  CHECK(t.rhs_richardson_error < 0.1 * t.rows.back().rhs_error);
  for (const auto& r : t.rows) CHECK(r.lhs <= r.rhs + 1e-8);
}

TEST_CASE("Taylor remainder") {
  const auto ctx = SphereContext::make(2, 32, 66);
  const auto zero = taylor_remainder_check(0.8, ZonalField::zero(ctx));
  CHECK(zero.sup_remainder <= 1e-12);

  const double c = 0.9, gamma = 0.8, eps = 2.0 - 2.0 * gamma;
  const auto rc = taylor_remainder_check(gamma, ZonalField::constant(ctx, c));
  const double x = 0.5 * eps * c;
  CHECK(rc.sup_remainder == doctest::Approx((std::exp(x) - 1 - x) / (eps * eps)).epsilon(1e-12));

  std::vector<double> sups;
  for (double g : {0.6, 0.8, 0.95}) {
    const auto r = taylor_remainder_check(g, ZonalField::mode(ctx, 1, 1.0));
    CHECK(r.closed_form_discrepancy <= 1e-10);
    CHECK(r.within_bound);
    sups.push_back(r.sup_remainder);
  }
  const auto [lo, hi] = std::minmax_element(sups.begin(), sups.end());
  // spread relative to the largest value
  CHECK((*hi - *lo) / *hi < 0.2);
}

TEST_CASE("records: fitted order and table bookkeeping") {
  CHECK(fitted_order({1.0, 0.5, 0.25}, {3.0, 0.75, 0.1875}) == doctest::Approx(2.0));
  CHECK(std::isnan(fitted_order({1.0}, {1.0})));
  LimitTable t;
  for (int m = 0; m < 4; ++m) {
    LimitRow r;
    r.gap = std::pow(0.5, m);
    r.lhs = 1.0 + r.gap;
    r.rhs = 2.0 - 3.0 * r.gap;
    r.lhs_target = 1.0;
    r.rhs_target = 2.0;
    t.rows.push_back(r);
  }
  finalize_limit_table(t);
  CHECK(t.lhs_order == doctest::Approx(1.0));
  CHECK(t.rhs_order == doctest::Approx(1.0));
  CHECK(std::isnan(t.rows[0].lhs_order_running));
  CHECK(t.rows[2].rhs_order_running == doctest::Approx(1.0));
  CHECK(t.lhs_richardson == doctest::Approx(1.0));
  CHECK(t.rhs_richardson == doctest::Approx(2.0));
  CHECK(max_limit_error(t) == doctest::Approx(3.0));
  CHECK(errors_nonincreasing(t, 0));
  t.rows[3].lhs_error = 10.0;
  CHECK_FALSE(errors_nonincreasing(t, 0));
}

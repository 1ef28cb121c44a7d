#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "edes/exponents.hpp"

using namespace edes;

namespace {

double rel_residual(double value, double a, double b, double c) {
  // |a p^2 + b p + c| scaled by the term magnitudes.
  const double num = std::abs(a * value * value + b * value + c);
  const double den = std::abs(a * value * value) + std::abs(b * value) + std::abs(c);
  return num / den;
}

}  // namespace

TEST_CASE("p0_singular closed form") {
  const double p3 = p0_singular(3);
  CHECK(std::abs(6.0 * p3 * p3 - 16.0 * p3 - 2.0) < 1e-10);
  CHECK(p3 == doctest::Approx((16.0 + std::sqrt(304.0)) / 12.0).epsilon(1e-14));
  CHECK(p3 < 3.0);  // so that pcr(3) = 1 + 6/3
  CHECK_THROWS_AS(p0_singular(0), std::invalid_argument);
}

TEST_CASE("p0_singular tends to 1 from above") {
  // Frozen closed-form values; the deviations are ~1.19e-2 and ~1.20e-5,
  // slightly above the round thresholds, and monotone decreasing.
  const double d3 = p0_singular(1000) - 1.0;
  const double d6 = p0_singular(1000000) - 1.0;
  CHECK(d3 == doctest::Approx(0.011940578895633491).epsilon(1e-12));
  CHECK(d6 == doctest::Approx(1.1999940000562148e-5).epsilon(1e-10));
  CHECK(d3 > 0.0);
  CHECK(d6 > 0.0);
  CHECK(d6 < d3);
  CHECK(d3 < 2e-2);
  CHECK(d6 < 2e-5);
  double prev = p0_singular(10);
  for (int n = 20; n <= 1000; n += 10) {
    const double cur = p0_singular(n);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("pcr picks the max branch") {
  CHECK(pcr(3) == 3.0);  // exact: p0(3) < 3 = 1 + 6/3
  CHECK(pcr(1) == 7.0);  // p0(1) ~ 3.64 < 7
  CHECK(pcr(10) == doctest::Approx((23.0 + std::sqrt(633.0)) / 26.0).epsilon(1e-14));
  CHECK(pcr(10) > 1.0 + 6.0 / 10.0);
  for (int n = 1; n <= 300; ++n) {
    CHECK(pcr(n) >= p0_singular(n));
    CHECK(pcr(n) >= 1.0 + 6.0 / n);
  }
}

TEST_CASE("p0_nk closed form and residuals") {
  CHECK(p0_nk(3, 0.5) == doctest::Approx((3.0 + 2.0 * std::sqrt(3.0)) / 3.0).epsilon(1e-13));
  const double p_23 = p0_nk(3, 2.0 / 3.0);
  CHECK(std::abs(2.0 * p_23 * p_23 - (16.0 / 3.0) * p_23 - 2.0 / 3.0) < 1e-10);
  CHECK(p_23 == doctest::Approx((16.0 + std::sqrt(304.0)) / 12.0).epsilon(1e-13));
  const double p_0 = p0_nk(3, 0.0);
  CHECK(std::abs(6.0 * p_0 * p_0 - 8.0 * p_0 - 2.0) < 1e-10);
  CHECK(p_0 == doctest::Approx((4.0 + std::sqrt(28.0)) / 6.0).epsilon(1e-13));
  CHECK_THROWS_AS(p0_nk(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(p0_nk(3, -0.1), std::invalid_argument);
}

TEST_CASE("root residual sweep over (n, k)") {
  for (int n = 1; n <= 300; ++n) {
    const double p = p0_singular(n);
    CHECK(rel_residual(p, n + 3.0, -(n + 13.0), -2.0) < 1e-12);
    const double a = alpha0(n);
    CHECK(rel_residual(a, n + 3.0, n + 3.0, -6.0) < 1e-12);
    for (int j = 0; j < 10; ++j) {
      const double k = 0.1 * j;
      const double q = p0_nk(n, k);
      CHECK(rel_residual(q, (1.0 - k) * (n + 3.0), -(n + 5.0 - k * (n + 1.0)), -2.0 + 2.0 * k) <
            1e-12);
    }
  }
}

TEST_CASE("alpha0 values") {
  CHECK(alpha0(3) == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-14));
  const double a1 = alpha0(1);
  CHECK(a1 == doctest::Approx((-4.0 + std::sqrt(112.0)) / 8.0).epsilon(1e-13));
  CHECK(std::abs(4.0 * a1 * a1 + 4.0 * a1 - 6.0) < 1e-10);
  for (int n = 1; n <= 300; ++n) {
    const double a = alpha0(n);
    CHECK(a > 0.0);
    CHECK((n + 3.0) * (a * a + a) == doctest::Approx(6.0).epsilon(1e-12));
  }
}

TEST_CASE("kato_condition truth table") {
  CHECK(kato_condition(2, 2, 1));
  CHECK_FALSE(kato_condition(2, 4, 1));
  CHECK_FALSE(kato_condition(2, 3, 1));  // boundary (p-1)r = q-2 excluded
  CHECK_FALSE(kato_condition(2, 2, 0.5));
  CHECK_FALSE(kato_condition(1.0, 2, 1));
}

TEST_CASE("case bounds at the worked examples") {
  CHECK(fujita_like(3, 0.5) == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
  // The displayed formula gives 2 at (3, 1/2); the printed 8/3 is its k=2/3 value.
  CHECK(upper_bound_case2(3, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(upper_bound_case2(3, 2.0 / 3.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(fujita_like(3, 2.0 / 3.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fujita_like(1, 2.0 / 3.0) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("blowup_predicted") {
  CHECK(blowup_predicted(3, 2.0 / 3.0, 2.5, Problem::CauchyAtOne) == Prediction::Blowup);
  // Case 2 fails at p = 2.2 (p0_nk(3,1/2) ~ 2.1547) but case 1 holds: 2.2 < 7/3.
  CHECK(2.2 < fujita_like(3, 0.5));
  CHECK(2.2 > p0_nk(3, 0.5));
  CHECK(blowup_predicted(3, 0.5, 2.2, Problem::CauchyAtOne) == Prediction::Blowup);
  CHECK(blowup_predicted(3, 2.0 / 3.0, 4.0, Problem::CauchyAtOne) == Prediction::NoPrediction);
  CHECK(blowup_predicted(3, 2.0 / 3.0, 2.9, Problem::SingularAtZero) == Prediction::Blowup);
  CHECK(blowup_predicted(3, 2.0 / 3.0, 3.0, Problem::SingularAtZero) ==
        Prediction::NoPrediction);
  CHECK_THROWS_AS(blowup_predicted(3, 2.0 / 3.0, 1.0, Problem::CauchyAtOne),
                  std::invalid_argument);
  CHECK_THROWS_AS(blowup_predicted(3, 0.5, 2.0, Problem::SingularAtZero),
                  std::invalid_argument);
}

TEST_CASE("blowup_predicted monotone in p under case 1") {
  for (int n : {1, 2, 3, 5, 8}) {
    for (double k : {0.0, 0.3, 2.0 / 3.0, 0.9}) {
      const double bound = fujita_like(n, k);
      const double p2 = 1.0 + 0.9 * (bound - 1.0);
      REQUIRE(blowup_predicted(n, k, p2, Problem::CauchyAtOne) == Prediction::Blowup);
      for (int j = 1; j <= 8; ++j) {
        const double p1 = 1.0 + j / 9.0 * (p2 - 1.0);
        CHECK(blowup_predicted(n, k, p1, Problem::CauchyAtOne) == Prediction::Blowup);
      }
    }
  }
}

TEST_CASE("figure-1 ratio crosses 1 exactly once, inside (3,5)") {
  int sign_changes = 0;
  double prev = p0_singular(1) / (1.0 + 6.0 / 1) - 1.0;
  for (int n = 2; n <= 300; ++n) {
    const double cur = p0_singular(n) / (1.0 + 6.0 / n) - 1.0;
    if ((prev < 0.0) != (cur < 0.0)) ++sign_changes;
    prev = cur;
  }
  CHECK(sign_changes == 1);

  const auto ratio = [](double n) {
    return detail::p0_singular_real(n) / (1.0 + 6.0 / n) - 1.0;
  };
  double lo = 1.0, hi = 300.0;
  REQUIRE(ratio(lo) < 0.0);
  REQUIRE(ratio(hi) > 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) < 0.0 ? lo : hi) = mid;
  }
  CHECK(lo > 3.0);
  CHECK(hi < 5.0);
}

TEST_CASE("exponent report is consistent") {
  const ExponentReport report = exponent_report(3, 0.5);
  CHECK(report.n == 3);
  CHECK(report.pcr == pcr(3));
  CHECK(report.p0_nk == p0_nk(3, 0.5));
  CHECK(report.alpha0 == alpha0(3));
  CHECK(report.fujita_like == fujita_like(3, 0.5));
}

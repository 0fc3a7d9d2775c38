#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "stdq/model.hpp"
#include "stdq/oracle.hpp"

namespace {

using stdq::DeformationParameter;
using stdq::ModeState;
using stdq::Order;

ModeState X(double x) { return ModeState::from_x(x); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TEST(ModeStateTest, Construction) {
  EXPECT_DOUBLE_EQ(X(1.5).x(), 1.5);
  EXPECT_FALSE(X(1.5).beta().has_value());
  const auto m = ModeState::from_beta_omega(1e20, 2e14);
  EXPECT_NEAR(m.x(), 1e20 * stdq::kHbar * 2e14, 1e-15);
  EXPECT_EQ(*m.beta(), 1e20);
  EXPECT_EQ(*m.omega(), 2e14);
  EXPECT_THROW(X(0.0), stdq::DomainError);
  EXPECT_THROW(X(-1.0), stdq::DomainError);
  EXPECT_THROW(X(INFINITY), stdq::DomainError);
  EXPECT_THROW(X(NAN), stdq::DomainError);
}

TEST(OrderTest, Bounds) {
  EXPECT_EQ(Order(1).value(), 1);
  EXPECT_EQ(Order(64).value(), 64);
  EXPECT_THROW(Order(0), stdq::DomainError);
  EXPECT_THROW(Order(65), stdq::DomainError);
}

TEST(DomainCheck, Examples) {
  auto rep = stdq::domain_check(DeformationParameter::real(1.0), X(0.5), Order(3));
  EXPECT_TRUE(rep.valid);
  EXPECT_EQ(rep.reason, stdq::DomainReason::ok);
  EXPECT_NEAR(rep.margin, 1 - std::exp(-0.5), 1e-15);

  rep = stdq::domain_check(DeformationParameter::real(2.0), X(2.0), Order(3));
  EXPECT_FALSE(rep.valid);
  EXPECT_EQ(rep.reason, stdq::DomainReason::divergent);

  rep = stdq::domain_check(DeformationParameter::phase(std::numbers::pi / 3), X(0.01), Order(10));
  EXPECT_TRUE(rep.valid);

  rep = stdq::domain_check(DeformationParameter::real(2.0), X(3 * std::log(2.0) + 1e-9), Order(3));
  EXPECT_TRUE(rep.valid);
  EXPECT_EQ(rep.reason, stdq::DomainReason::near_pole);
}

TEST(DomainCheck, ModelFunctionsRefuseInvalidPoints) {
  const auto dp = DeformationParameter::real(2.0);
  EXPECT_THROW(stdq::dist_r(dp, X(2.0), Order(3)), stdq::DomainError);
  EXPECT_THROW(stdq::dist_3(dp, X(2.0)), stdq::DomainError);
  EXPECT_THROW(stdq::intercept_r(dp, X(2.0), Order(3)), stdq::DomainError);
  EXPECT_THROW(stdq::mean_occupation(dp, X(0.5)), stdq::DomainError);
}

TEST(MeanOccupation, Examples) {
  EXPECT_NEAR(stdq::mean_occupation(DeformationParameter::real(1.0), X(std::log(2.0))), 1.0, 1e-14);
  EXPECT_NEAR(stdq::mean_occupation(DeformationParameter::real(1.5), X(40.0)), 0.0, 1e-15);
  EXPECT_NEAR(stdq::mean_occupation(DeformationParameter::phase(0.4), X(40.0)), 0.0, 1e-15);
}

TEST(MeanOccupation, MatchesOracle) {
  const auto dp = DeformationParameter::real(1.5);
  const double closed = stdq::mean_occupation(dp, X(2.0));
  const double oracle = stdq::oracle_dist_r(stdq::StdStructure{dp}, X(2.0), Order(1));
  EXPECT_LE(rel(closed, oracle), 1e-10);
}

TEST(DistR, MatchesOracle) {
  const auto dp = DeformationParameter::real(1.2);
  EXPECT_LE(rel(stdq::dist_r(dp, X(3.0), Order(3)), stdq::oracle_dist_r(stdq::StdStructure{dp}, X(3.0), Order(3))),
            1e-10);
  const auto ph = DeformationParameter::phase(0.3);
  EXPECT_LE(rel(stdq::dist_4(ph, X(1.0)), stdq::oracle_dist_r(stdq::StdStructure{ph}, X(1.0), Order(4))), 1e-10);
}

TEST(DistR, ClassicalCollapse) {
  const auto q1 = DeformationParameter::real(1.0);
  for (int r = 1; r <= 6; ++r) {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double expected = stdq::classical_limit_dist(X(x), Order(r));
      EXPECT_LE(rel(stdq::dist_r(q1, X(x), Order(r)), expected), 1e-12) << "r=" << r << " x=" << x;
      double fact = 1;
      for (int j = 2; j <= r; ++j) fact *= j;
      EXPECT_LE(std::abs(stdq::intercept_r(q1, X(x), Order(r)) + 1.0 - fact), 1e-12 * fact);
    }
  }
}

TEST(DistR, FirstOrderIsMeanOccupation) {
  for (auto dp : {DeformationParameter::real(0.7), DeformationParameter::real(1.3), DeformationParameter::phase(1.1)}) {
    for (double x : {0.6, 1.0, 3.0}) {
      EXPECT_LE(rel(stdq::dist_r(dp, X(x), Order(1)), stdq::mean_occupation(dp, X(x))), 1e-14);
      EXPECT_EQ(stdq::intercept_r(dp, X(x), Order(1)), 0.0);
    }
  }
}

// On the unit circle the brackets cancel near degeneracy angles; differences are
// measured against a floor tied to the q = 1 magnitude, which bounds |phi(n)| <= n.
double spec_rel(double a, double b, const DeformationParameter& dp, double x, int r) {
  const double floor = dp.is_phase() ? 1e-4 * stdq::classical_limit_dist(X(x), Order(r)) : 0.0;
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

TEST(DistR, LiteralLowOrdersMatchGeneralForm) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lq(-0.3, 0.3), th(-3.0, 3.0), u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto dp = i % 2 ? DeformationParameter::real(std::exp(lq(rng))) : DeformationParameter::phase(th(rng));
    const double x = 4 * std::abs(dp.log_modulus()) + 0.2 + 5.0 * u(rng);
    EXPECT_LE(spec_rel(stdq::dist_2(dp, X(x)), stdq::dist_r(dp, X(x), Order(2)), dp, x, 2), 1e-12) << dp.repr() << " " << x;
    EXPECT_LE(spec_rel(stdq::dist_3(dp, X(x)), stdq::dist_r(dp, X(x), Order(3)), dp, x, 3), 1e-12) << dp.repr() << " " << x;
    EXPECT_LE(spec_rel(stdq::dist_4(dp, X(x)), stdq::dist_r(dp, X(x), Order(4)), dp, x, 4), 1e-12) << dp.repr() << " " << x;
  }
}

TEST(Intercept, LiteralAndDisplayedFormsAgree) {
  for (auto dp : {DeformationParameter::real(0.8), DeformationParameter::real(1.1), DeformationParameter::real(1.25),
                  DeformationParameter::phase(0.2), DeformationParameter::phase(2.0)}) {
    for (double x : {1.2, 2.0, 4.0}) {
      const auto m = X(x);
      const double l2 = stdq::intercept_r(dp, m, Order(2)) + 1;
      const double l3 = stdq::intercept_r(dp, m, Order(3)) + 1;
      const double l4 = stdq::intercept_r(dp, m, Order(4)) + 1;
      EXPECT_LE(rel(stdq::intercept_2(dp, m) + 1, l2), 1e-12) << dp.repr();
      EXPECT_LE(rel(stdq::intercept_3(dp, m) + 1, l3), 1e-12) << dp.repr();
      EXPECT_LE(rel(stdq::intercept_4(dp, m) + 1, l4), 1e-12) << dp.repr();
      for (int r = 2; r <= 6; ++r) {
        if (!stdq::domain_check(dp, m, Order(r)).valid) continue;
        EXPECT_LE(rel(stdq::intercept_r_displayed(dp, m, Order(r)) + 1, stdq::intercept_r(dp, m, Order(r)) + 1), 1e-12)
            << dp.repr() << " r=" << r;
      }
    }
  }
}

TEST(Intercept, MatchesOracle) {
  const auto dp = DeformationParameter::real(1.1);
  const double closed = stdq::intercept_r(dp, X(2.0), Order(2));
  const double oracle = stdq::oracle_intercept_r(stdq::StdStructure{dp}, X(2.0), Order(2));
  EXPECT_LE(std::abs(closed - oracle), 1e-9 * (1 + std::abs(oracle)));
}

TEST(Intercept, Asymptotic) {
  EXPECT_DOUBLE_EQ(stdq::intercept_asymptotic(DeformationParameter::real(1.0), Order(4)), 23.0);
  EXPECT_EQ(stdq::intercept_asymptotic(DeformationParameter::real(1.7), Order(1)), 0.0);
  EXPECT_DOUBLE_EQ(stdq::intercept_asymptotic(DeformationParameter::real(2.0), Order(2)), 1.5);
  EXPECT_NEAR(stdq::intercept_r(DeformationParameter::real(2.0), X(40.0), Order(2)), 1.5, 1e-10);
  for (auto dp : {DeformationParameter::real(0.5), DeformationParameter::real(1.25), DeformationParameter::phase(0.3)}) {
    for (int r = 2; r <= 5; ++r) {
      EXPECT_NEAR(stdq::intercept_r(dp, X(40.0), Order(r)), stdq::intercept_asymptotic(dp, Order(r)), 1e-10);
    }
  }
}

TEST(Intercept, ZeroDenominatorAtMeanOccupationZero) {
  const double th = 0.7;
  const double xstar = std::log(std::cos(th) + std::abs(std::sin(th)));
  const auto dp = DeformationParameter::phase(th);
  EXPECT_NEAR(stdq::mean_occupation(dp, X(xstar)), 0.0, 1e-14);
  EXPECT_THROW(stdq::intercept_r(dp, X(xstar), Order(2)), stdq::ZeroDenominator);
  EXPECT_THROW(stdq::intercept_2(dp, X(xstar)), stdq::ZeroDenominator);
  EXPECT_NO_THROW(stdq::intercept_r(dp, X(xstar + 0.05), Order(2)));
}

TEST(Symmetry, RandomizedInversion) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> lq(-0.7, 0.7), th(-3.1, 3.1), u(0.0, 1.0);
  std::uniform_int_distribution<int> rd(1, 6);
  for (int i = 0; i < 300; ++i) {
    const auto dp = i % 2 ? DeformationParameter::real(std::exp(lq(rng))) : DeformationParameter::phase(th(rng));
    const int r = rd(rng);
    const double x = r * std::abs(dp.log_modulus()) + 0.1 + 6 * u(rng);
    const auto m = X(x);
    const double a = stdq::dist_r(dp, m, Order(r));
    const double b = stdq::dist_r(dp.inverse(), m, Order(r));
    EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(a) + 1e-300) << dp.repr() << " x=" << x << " r=" << r;
  }
}

TEST(ClassicalLimit, Formula) {
  EXPECT_NEAR(stdq::classical_limit_dist(X(std::log(2.0)), Order(3)), 6.0, 1e-13);
}

}  // namespace

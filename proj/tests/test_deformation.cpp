#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "stdq/deformation.hpp"
#include "stdq/laurent_poly.hpp"

namespace {

using stdq::DeformationParameter;
using stdq::LaurentPoly;

TEST(DeformationParameter, RejectsInvalidValues) {
  EXPECT_THROW(DeformationParameter::real(0.0), stdq::DomainError);
  EXPECT_THROW(DeformationParameter::real(-1.0), stdq::DomainError);
  EXPECT_THROW(DeformationParameter::real(INFINITY), stdq::DomainError);
  EXPECT_THROW(DeformationParameter::real(NAN), stdq::DomainError);
  EXPECT_THROW(DeformationParameter::phase(3.5), stdq::DomainError);
  EXPECT_NO_THROW(DeformationParameter::phase(-std::numbers::pi));
  EXPECT_NO_THROW(DeformationParameter::phase(std::numbers::pi));
}

TEST(DeformationParameter, PhaseIsOnUnitCircle) {
  for (double th : {-3.0, -1.0, 0.0, 0.3, std::numbers::pi / 4, 2.0, std::numbers::pi}) {
    const auto z = DeformationParameter::phase(th).as_complex();
    EXPECT_NEAR(std::abs(z), 1.0, 1e-15) << th;
    EXPECT_NEAR(std::arg(z), th == std::numbers::pi ? std::arg(z) : th, 1e-15);
  }
}

TEST(DeformationParameter, InverseMapsVariants) {
  const auto r = DeformationParameter::real(1.25).inverse();
  ASSERT_TRUE(r.is_real());
  EXPECT_DOUBLE_EQ(r.q(), 0.8);
  EXPECT_EQ(r.inverse().q(), 1.25);

  const auto p = DeformationParameter::phase(0.7).inverse();
  ASSERT_TRUE(p.is_phase());
  EXPECT_EQ(p.theta(), -0.7);
}

TEST(DeformationParameter, InversePowersAreBitwiseSymmetric) {
  for (double q : {0.3, 0.8, 1.1, 1.25, 2.0, 7.5}) {
    const auto dp = DeformationParameter::real(q);
    const auto inv = dp.inverse();
    for (long m = -25; m <= 25; ++m) EXPECT_EQ(dp.pow(m), inv.pow(-m)) << q << " " << m;
  }
}

TEST(DeformationParameter, ScaledPowAvoidsOverflow) {
  const auto dp = DeformationParameter::real(2.0);
  // 2^2000 e^-1386 = e^(2000 ln 2 - 1386) ~ e^0.29
  const auto v = dp.scaled_pow(2000, -1386.0);
  EXPECT_NEAR(v.real(), std::exp(2000 * std::log(2.0) - 1386.0), 1e-12);
  EXPECT_EQ(dp.scaled_pow(3, 0.0), 8.0);
}

TEST(DeformationParameter, Repr) {
  EXPECT_EQ(DeformationParameter::real(1.5).repr(), "q=1.5");
  EXPECT_EQ(DeformationParameter::real(2.0).inverse().repr(), "q=0.5");
  EXPECT_EQ(DeformationParameter::phase(-0.25).repr(), "theta=-0.25");
}

TEST(LaurentPoly, CanonicalForm) {
  LaurentPoly p{{0, 1}, {2, 3}, {-1, 0}};
  EXPECT_EQ(p.terms().size(), 2u);
  p.add_term(2, -3);
  EXPECT_EQ(p, LaurentPoly::constant(1));
  EXPECT_TRUE((p + LaurentPoly::constant(-1)).is_zero());
}

TEST(LaurentPoly, ShiftAndSubstitute) {
  const LaurentPoly p{{0, 1}, {1, 1}, {2, 1}};
  EXPECT_EQ(p.shifted(-1), (LaurentPoly{{-1, 1}, {0, 1}, {1, 1}}));
  EXPECT_EQ(p.substituted(2), (LaurentPoly{{0, 1}, {2, 1}, {4, 1}}));
  EXPECT_EQ(p.coefficient_sum(), 3);
}

TEST(LaurentPoly, MultiplicationOverflowIsDetected) {
  const auto big = LaurentPoly::constant(INT64_MAX / 2 + 1);
  EXPECT_THROW(big * LaurentPoly::constant(2), stdq::OverflowError);
  EXPECT_THROW(big + big, stdq::OverflowError);
}

// Random small polynomials: ring axioms hold exactly and evaluation is a ring
// homomorphism to floating tolerance.
TEST(LaurentPoly, RingPropertiesRandomized) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> exp_dist(-6, 6);
  std::uniform_int_distribution<int> coef_dist(-9, 9);
  auto random_poly = [&] {
    LaurentPoly p;
    for (int i = 0; i < 5; ++i) p.add_term(exp_dist(rng), coef_dist(rng));
    return p;
  };
  const auto dp = DeformationParameter::phase(0.37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_poly(), b = random_poly(), c = random_poly();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    const auto lhs = (a * b).evaluate(dp);
    const auto rhs = a.evaluate(dp) * b.evaluate(dp);
    EXPECT_LT(std::abs(lhs - rhs), 1e-11 * (1.0 + std::abs(rhs)));
  }
}

}  // namespace

#include <numbers>

#include <gtest/gtest.h>

#include "stdq/fock.hpp"

namespace {

using stdq::DeformationParameter;

TEST(FockAlgebra, Examples) {
  EXPECT_LT(stdq::fock_algebra_check(DeformationParameter::real(1.0), 10), 1e-12);
  EXPECT_LT(stdq::fock_algebra_check(DeformationParameter::real(1.7), 12), 1e-11);
  EXPECT_LT(stdq::fock_algebra_check(DeformationParameter::phase(std::numbers::pi / 4), 8), 1e-11);
}

TEST(FockAlgebra, Grid) {
  for (auto dp : {DeformationParameter::real(0.5), DeformationParameter::real(2.0),
                  DeformationParameter::phase(std::numbers::pi / 6), DeformationParameter::phase(2.0)}) {
    EXPECT_LT(stdq::fock_algebra_check(dp, 12), 1e-11) << dp.repr();
  }
}

TEST(FockAlgebra, RejectsTinyTruncation) {
  EXPECT_THROW(stdq::fock_algebra_check(DeformationParameter::real(1.0), 1), stdq::DomainError);
}

TEST(FockAlgebra, MatricesHaveExpectedEntries) {
  const auto m = stdq::build_fock_matrices(DeformationParameter::real(2.0), 3);
  EXPECT_NEAR(std::norm(m.a(1, 2)), 2.5, 1e-14);
  EXPECT_NEAR(std::norm(m.a_dag(2, 1)), 2.5, 1e-14);
  EXPECT_EQ(m.number(3, 3), 3.0);
  // Negative bracket: theta = pi/2 gives {3} = 3 cos(pi) = -3.
  const auto p = stdq::build_fock_matrices(DeformationParameter::phase(std::numbers::pi / 2), 4);
  EXPECT_NEAR(p.a(2, 3).imag(), std::sqrt(3.0), 1e-12);
  EXPECT_EQ(p.a(2, 3), p.a_dag(3, 2));
}

TEST(FockAlgebra, ExpandedRhs) {
  const auto dp = DeformationParameter::real(1.3);
  for (long n = 0; n < 15; ++n) {
    const auto diff = stdq::std_bracket_complex(n + 1, dp) - stdq::std_bracket_complex(n, dp);
    EXPECT_NEAR(std::abs(diff - stdq::commutator_rhs_expanded(n, dp)), 0.0, 1e-11);
  }
}

}  // namespace

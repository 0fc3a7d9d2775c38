#pragma once

// Closed-form observables of the single-mode STD q-Bose gas: mean occupation,
// r-particle distributions <(a+)^r a^r>, correlation intercepts and their
// large-x asymptotics. Every formula is evaluated in complex arithmetic (a real
// q embeds as a complex number) and the result is checked to be real.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "stdq/deformation.hpp"
#include "stdq/errors.hpp"
#include "stdq/qkernel.hpp"

namespace stdq {

/// Reduced Planck constant in J s.
inline constexpr double kHbar = 1.054571817e-34;

/// Single-mode thermodynamic input x = beta hbar omega > 0.
class ModeState {
 public:
  static ModeState from_x(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) {
      throw DomainError("mode x = beta*hbar*omega must be positive and finite, got " + shortest_repr(x));
    }
    return ModeState(x, std::nullopt, std::nullopt);
  }

  /// beta in 1/J, omega in 1/s.
  static ModeState from_beta_omega(double beta, double omega) {
    ModeState m = from_x(beta * kHbar * omega);
    m.beta_ = beta;
    m.omega_ = omega;
    return m;
  }

  double x() const { return x_; }
  std::optional<double> beta() const { return beta_; }
  std::optional<double> omega() const { return omega_; }

 private:
  ModeState(double x, std::optional<double> beta, std::optional<double> omega)
      : x_(x), beta_(beta), omega_(omega) {}

  double x_;
  std::optional<double> beta_;
  std::optional<double> omega_;
};

/// Correlation / distribution order r, 1 <= r <= 64.
class Order {
 public:
  static constexpr int kMax = 64;

  explicit Order(int r) : r_(r) {
    if (r < 1 || r > kMax) {
      throw DomainError("order r must be in [1, " + std::to_string(kMax) + "], got " + std::to_string(r));
    }
  }

  int value() const { return r_; }
  operator int() const { return r_; }

 private:
  int r_;
};

enum class DomainReason { ok, near_pole, divergent };

inline const char* to_string(DomainReason r) {
  switch (r) {
    case DomainReason::ok: return "ok";
    case DomainReason::near_pole: return "near_pole";
    case DomainReason::divergent: return "divergent";
  }
  return "unknown";
}

/// Convergence report for the geometric sums behind every closed form.
struct DomainReport {
  bool valid = false;
  /// 1 - e^-x max(q, 1/q)^r (real q) or 1 - e^-x (phase q).
  double margin = 0.0;
  DomainReason reason = DomainReason::divergent;
};

/// Margin below which a valid point is flagged as ill-conditioned.
inline constexpr double kNearPoleMargin = 1e-6;

/// Threshold on the mean occupation, relative to its cancellation-free
/// magnitude, below which intercepts are refused.
inline constexpr double kZeroDenominator = 1e-14;

inline DomainReport domain_check(const DeformationParameter& dp, const ModeState& mode, Order order) {
  // Every |q^(r-2k) e^-x| < 1 for k = 0..r  <=>  x > r |ln q|.
  const double exponent = static_cast<double>(order.value()) * std::abs(dp.log_modulus()) - mode.x();
  DomainReport rep;
  rep.margin = -std::expm1(exponent);
  rep.valid = rep.margin > 0.0;
  if (!rep.valid) rep.reason = DomainReason::divergent;
  else if (rep.margin < kNearPoleMargin) rep.reason = DomainReason::near_pole;
  else rep.reason = DomainReason::ok;
  return rep;
}

namespace detail {

inline void require_domain(const DeformationParameter& dp, const ModeState& mode, Order order, const char* what) {
  const DomainReport rep = domain_check(dp, mode, order);
  if (!rep.valid) {
    throw DomainError(std::string(what) + ": geometric series diverges at " + dp.repr() +
                      ", x=" + shortest_repr(mode.x()) + ", r=" + std::to_string(order.value()));
  }
}

/// 1 - q^m e^-x, using expm1 where it helps.
inline std::complex<double> one_minus_scaled(const DeformationParameter& dp, long m, double x) {
  if (dp.is_real()) return -std::expm1(static_cast<double>(m) * dp.log_modulus() - x);
  if (m == 0) return -std::expm1(-x);
  return 1.0 - dp.scaled_pow(m, -x);
}

inline std::complex<double> ipow(std::complex<double> z, int n) {
  std::complex<double> result = 1.0;
  while (n > 0) {
    if (n & 1) result *= z;
    z *= z;
    n >>= 1;
  }
  return result;
}

inline double factorial(int r) {
  double f = 1.0;
  for (int k = 2; k <= r; ++k) f *= k;
  return f;
}

/// (1 - q e^-x)^-2 + (1 - q^-1 e^-x)^-2, shared by the mean occupation and the intercepts.
inline std::complex<double> occupation_bracket(const DeformationParameter& dp, double x) {
  const auto a = one_minus_scaled(dp, 1, x);
  const auto b = one_minus_scaled(dp, -1, x);
  return 1.0 / (a * a) + 1.0 / (b * b);
}

inline std::complex<double> mean_occupation_complex(const DeformationParameter& dp, double x) {
  return 0.5 * std::exp(-x) * -std::expm1(-x) * occupation_bracket(dp, x);
}

/// sum_k q^(k(k+1) - r(r+1)/2) (r choose k)_{q^2} q^((r-2k) r) e^(-r x) / (1 - q^(r-2k) e^-x)^(r+1).
inline std::complex<double> distribution_sum(const DeformationParameter& dp, double x, int r) {
  const auto row = gaussian_binomial_row(r);
  ComplexNeumaierSum sum;
  for (int k = 0; k <= r; ++k) {
    const long shift = static_cast<long>(k) * (k + 1) - static_cast<long>(r) * (r + 1) / 2 +
                       static_cast<long>(r - 2 * k) * r;
    const auto numer = row[static_cast<std::size_t>(k)].substituted(2).evaluate_scaled(dp, shift, -r * x);
    const auto denom = ipow(one_minus_scaled(dp, r - 2 * k, x), r + 1);
    sum.add(numer / denom);
  }
  return sum.value();
}

inline std::complex<double> dist_r_complex(const DeformationParameter& dp, double x, int r) {
  const double prefactor = std::ldexp(factorial(r), -r) * -std::expm1(-x);
  return prefactor * distribution_sum(dp, x, r);
}

}  // namespace detail

/// <a+ a> = e^-x (1 - e^-x)/2 [(1 - q e^-x)^-2 + (1 - q^-1 e^-x)^-2].
inline double mean_occupation(const DeformationParameter& dp, const ModeState& mode) {
  detail::require_domain(dp, mode, Order(1), "mean_occupation");
  return require_real(detail::mean_occupation_complex(dp, mode.x()), "mean_occupation");
}

/// General r-particle distribution <(a+)^r a^r> from the Gaussian-binomial closed form.
inline double dist_r(const DeformationParameter& dp, const ModeState& mode, Order order) {
  detail::require_domain(dp, mode, order, "dist_r");
  const auto v = detail::dist_r_complex(dp, mode.x(), order.value());
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw OverflowError("dist_r: result overflows double range at r=" + std::to_string(order.value()));
  }
  return require_real(v, "dist_r");
}

namespace detail {

inline std::complex<double> dist_4_bracket(const DeformationParameter& dp, std::complex<double> e) {
  const auto q2 = dp.pow(2), q4 = dp.pow(4), q6 = dp.pow(6);
  const auto qm2 = dp.pow(-2), qm4 = dp.pow(-4), qm6 = dp.pow(-6);
  return q6 / ipow(1.0 - q4 * e, 5) + (1.0 + q2 + q4 + q6) / ipow(1.0 - q2 * e, 5) +
         (qm4 + qm2 + 2.0 + q2 + q4) / ipow(1.0 - e, 5) + (1.0 + qm2 + qm4 + qm6) / ipow(1.0 - qm2 * e, 5) +
         qm6 / ipow(1.0 - qm4 * e, 5);
}

inline std::complex<double> dist_2_bracket(const DeformationParameter& dp, std::complex<double> e) {
  const auto q = dp.pow(1), qi = dp.pow(-1);
  return q / ipow(1.0 - q * q * e, 3) + qi / ipow(1.0 - qi * qi * e, 3) + (q + qi) / ipow(1.0 - e, 3);
}

inline std::complex<double> dist_3_bracket(const DeformationParameter& dp, std::complex<double> e) {
  const auto q = dp.pow(1), qi = dp.pow(-1);
  const auto q2 = dp.pow(2), q3 = dp.pow(3), q4 = dp.pow(4);
  const auto qm2 = dp.pow(-2), qm3 = dp.pow(-3), qm4 = dp.pow(-4);
  return q3 / ipow(1.0 - q3 * e, 4) + qm3 / ipow(1.0 - qm3 * e, 4) + q3 * (1.0 + qm2 + qm4) / ipow(1.0 - q * e, 4) +
         qm3 * (1.0 + q2 + q4) / ipow(1.0 - qi * e, 4);
}

/// (1 - q e^-x)^-2 + (1 - q^-1 e^-x)^-2 written out literally.
inline std::complex<double> literal_occupation_bracket(const DeformationParameter& dp, std::complex<double> e) {
  const auto a = 1.0 - dp.pow(1) * e;
  const auto b = 1.0 - dp.pow(-1) * e;
  return 1.0 / (a * a) + 1.0 / (b * b);
}

}  // namespace detail

// Explicit low-order distributions, transcribed term by term. They are kept
// independent of dist_r so that each cross-checks the other.

inline double dist_2(const DeformationParameter& dp, const ModeState& mode) {
  detail::require_domain(dp, mode, Order(2), "dist_2");
  const double x = mode.x();
  const std::complex<double> e = std::exp(-x);
  return require_real(0.5 * std::exp(-2.0 * x) * (1.0 - e) * detail::dist_2_bracket(dp, e), "dist_2");
}

inline double dist_3(const DeformationParameter& dp, const ModeState& mode) {
  detail::require_domain(dp, mode, Order(3), "dist_3");
  const double x = mode.x();
  const std::complex<double> e = std::exp(-x);
  return require_real(0.75 * std::exp(-3.0 * x) * (1.0 - e) * detail::dist_3_bracket(dp, e), "dist_3");
}

inline double dist_4(const DeformationParameter& dp, const ModeState& mode) {
  detail::require_domain(dp, mode, Order(4), "dist_4");
  const double x = mode.x();
  const std::complex<double> e = std::exp(-x);
  return require_real(1.5 * (1.0 - e) * std::exp(-4.0 * x) * detail::dist_4_bracket(dp, e), "dist_4");
}

namespace detail {

/// e^-x (1 - e^-x)/2 (|1 - q e^-x|^-2 + |1 - q^-1 e^-x|^-2): the size the mean
/// occupation would have without cancellation between its two terms.
inline double mean_occupation_scale(const DeformationParameter& dp, double x) {
  return 0.5 * std::exp(-x) * -std::expm1(-x) *
         (1.0 / std::norm(one_minus_scaled(dp, 1, x)) + 1.0 / std::norm(one_minus_scaled(dp, -1, x)));
}

inline double checked_denominator(const DeformationParameter& dp, const ModeState& mode) {
  const double mean = require_real(mean_occupation_complex(dp, mode.x()), "mean_occupation");
  if (std::abs(mean) < kZeroDenominator * mean_occupation_scale(dp, mode.x())) {
    throw ZeroDenominator("mean occupation " + shortest_repr(mean) + " vanishes at " + dp.repr() +
                          ", x=" + shortest_repr(mode.x()));
  }
  return mean;
}

}  // namespace detail

/// Direct evaluation of the displayed closed form of lambda^(r):
///   r! q^(-r(r-1)/2) sum_k (r choose k)_{q^2} q^((k-r)(k-r+1)) / (1 - q^(r-2k) e^-x)^(r+1)
///   / [(1 - e^-x)^(r-1) ((1 - q e^-x)^-2 + (1 - q^-1 e^-x)^-2)^r] - 1.
/// Algebraically identical to intercept_r; kept as an independent cross-check.
inline double intercept_r_displayed(const DeformationParameter& dp, const ModeState& mode, Order order) {
  detail::require_domain(dp, mode, order, "intercept_r_displayed");
  detail::checked_denominator(dp, mode);
  const int r = order.value();
  const double x = mode.x();
  const auto row = gaussian_binomial_row(r);
  ComplexNeumaierSum sum;
  for (int k = 0; k <= r; ++k) {
    const long shift = static_cast<long>(k - r) * (k - r + 1) - static_cast<long>(r) * (r - 1) / 2;
    const auto numer = row[static_cast<std::size_t>(k)].substituted(2).evaluate_scaled(dp, shift, 0.0);
    sum.add(numer / detail::ipow(detail::one_minus_scaled(dp, r - 2 * k, x), r + 1));
  }
  const auto denom = std::pow(-std::expm1(-x), r - 1) * detail::ipow(detail::occupation_bracket(dp, x), r);
  return require_real(detail::factorial(r) * sum.value() / denom, "intercept_r_displayed") - 1.0;
}

/// lambda^(r) = <(a+)^r a^r> / <a+ a>^r - 1. Defined for r = 1 (where it is 0).
inline double intercept_r(const DeformationParameter& dp, const ModeState& mode, Order order) {
  detail::require_domain(dp, mode, order, "intercept_r");
  const double mean = detail::checked_denominator(dp, mode);
  if (order.value() == 1) return 0.0;
  const double d = dist_r(dp, mode, order);
  return d / std::pow(mean, order.value()) - 1.0;
}

// Literal displayed intercepts for r = 2, 3, 4.

inline double intercept_2(const DeformationParameter& dp, const ModeState& mode) {
  detail::require_domain(dp, mode, Order(2), "intercept_2");
  detail::checked_denominator(dp, mode);
  const std::complex<double> e = std::exp(-mode.x());
  const auto s = detail::literal_occupation_bracket(dp, e);
  return require_real(2.0 * detail::dist_2_bracket(dp, e) / ((1.0 - e) * s * s), "intercept_2") - 1.0;
}

inline double intercept_3(const DeformationParameter& dp, const ModeState& mode) {
  detail::require_domain(dp, mode, Order(3), "intercept_3");
  detail::checked_denominator(dp, mode);
  const std::complex<double> e = std::exp(-mode.x());
  const auto s = detail::literal_occupation_bracket(dp, e);
  const auto denom = (1.0 - e) * (1.0 - e) * s * s * s;
  return require_real(6.0 * detail::dist_3_bracket(dp, e) / denom, "intercept_3") - 1.0;
}

inline double intercept_4(const DeformationParameter& dp, const ModeState& mode) {
  detail::require_domain(dp, mode, Order(4), "intercept_4");
  detail::checked_denominator(dp, mode);
  const std::complex<double> e = std::exp(-mode.x());
  const auto s = detail::literal_occupation_bracket(dp, e);
  const auto denom = detail::ipow(1.0 - e, 3) * detail::ipow(s, 4);
  return require_real(24.0 * detail::dist_4_bracket(dp, e) / denom, "intercept_4") - 1.0;
}

/// Large-x limit of lambda^(r): {r}_q! - 1. Independent of x.
inline double intercept_asymptotic(const DeformationParameter& dp, Order order) {
  return std_factorial(order.value(), dp) - 1.0;
}

/// Ideal Bose gas distribution r! e^(-r x) / (1 - e^-x)^r = r! / (e^x - 1)^r.
inline double classical_limit_dist(const ModeState& mode, Order order) {
  return detail::factorial(order.value()) / std::pow(std::expm1(mode.x()), order.value());
}

}  // namespace stdq

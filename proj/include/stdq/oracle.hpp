#pragma once

// Brute-force reference values: thermal averages summed term by term over the
// Fock ladder. Nothing here touches the closed forms in model.hpp.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <string>

#include "stdq/compensated_sum.hpp"
#include "stdq/deformation.hpp"
#include "stdq/errors.hpp"
#include "stdq/model.hpp"
#include "stdq/qkernel.hpp"

namespace stdq {

/// Anything mapping an occupation number n >= 0 to phi(n), with phi(0) = 0.
template <typename F>
concept StructureFunction = requires(const F& f, long n) {
  { f(n) } -> std::convertible_to<std::complex<double>>;
};

/// phi(n) = {n}_q.
struct StdStructure {
  DeformationParameter dp;
  std::complex<double> operator()(long n) const { return std_bracket_complex(n, dp); }
};

/// phi(n) = [n]_q.
struct BiedenharnMacfarlaneStructure {
  DeformationParameter dp;
  std::complex<double> operator()(long n) const { return bm_bracket_complex(n, dp); }
};

/// phi(n) = n.
struct ClassicalStructure {
  std::complex<double> operator()(long n) const { return static_cast<double>(n); }
};

struct SeriesConfig {
  double rel_tol = 1e-12;
  long max_terms = 1'000'000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) throw ConfigError("SeriesConfig: rel_tol must lie in (0, 1)");
    if (max_terms < 10) throw ConfigError("SeriesConfig: max_terms must be at least 10");
  }
};

struct SeriesResult {
  std::complex<double> value;
  /// Number of terms summed (N* + 1).
  long terms = 0;
  /// Per-term geometric decay estimate at the stopping point.
  double ratio = 0.0;
};

/// Width of the windows used to estimate the geometric decay of the terms.
inline constexpr long kRatioWindow = 20;

/// (1 - e^-x) sum_{n >= 0} term(n), where term(n) already carries the
/// Boltzmann weight e^(-n x). Summed in ascending n with compensated summation.
///
/// The decay rate of the terms is estimated from the maxima of consecutive
/// windows of kRatioWindow terms, rho = (M_k / M_{k-1})^(1/W), taking the larger
/// of the last two estimates. Window maxima rather than single-term ratios keep
/// the estimate stable when the terms oscillate or pass through zero (phase q).
/// Summation stops once M_k rho / (1 - rho) <= rel_tol |partial sum|.
template <typename T>
  requires std::invocable<const T&, long>
SeriesResult weighted_series_detailed(const T& term_at, const ModeState& mode, const SeriesConfig& cfg = {}) {
  cfg.validate();
  const double x = mode.x();
  ComplexNeumaierSum sum;
  double window_max = 0.0;
  double prev_max = -1.0;
  double prev_ratio = -1.0;
  for (long n = 0; n < cfg.max_terms; ++n) {
    const std::complex<double> term = term_at(n);
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      throw NonConvergent("thermal_average: term " + std::to_string(n) + " is not finite");
    }
    sum.add(term);
    window_max = std::max(window_max, std::abs(term));
    if ((n + 1) % kRatioWindow != 0) continue;

    if (prev_max >= 0.0 && !(prev_max == 0.0 && window_max == 0.0)) {
      const double ratio = prev_max == 0.0 ? INFINITY
                                           : std::pow(window_max / prev_max, 1.0 / static_cast<double>(kRatioWindow));
      const double rho = prev_ratio < 0.0 ? ratio : std::max(ratio, prev_ratio);
      prev_ratio = ratio;
      if (rho < 1.0) {
        const double tail = window_max * rho / (1.0 - rho);
        const auto partial = sum.value();
        if (tail <= cfg.rel_tol * std::abs(partial)) {
          return {-std::expm1(-x) * partial, n + 1, rho};
        }
      }
    }
    prev_max = window_max;
    window_max = 0.0;
  }
  throw NonConvergent("thermal_average: no convergence within " + std::to_string(cfg.max_terms) +
                      " terms at x=" + shortest_repr(x));
}

/// Thermal average <f(N)> = (1 - e^-x) sum_{n >= 0} f(n) e^(-n x).
template <typename F>
  requires std::invocable<const F&, long>
SeriesResult thermal_average_detailed(const F& f, const ModeState& mode, const SeriesConfig& cfg = {}) {
  const double x = mode.x();
  return weighted_series_detailed(
      [&](long n) { return std::complex<double>(f(n)) * std::exp(-static_cast<double>(n) * x); }, mode, cfg);
}

template <typename F>
  requires std::invocable<const F&, long>
std::complex<double> thermal_average(const F& f, const ModeState& mode, const SeriesConfig& cfg = {}) {
  return thermal_average_detailed(f, mode, cfg).value;
}

/// phi(n) phi(n-1) ... phi(n-r+1); zero when n < r.
template <StructureFunction F>
std::complex<double> phi_falling_product(const F& phi, long n, Order order) {
  const int r = order.value();
  if (n < r) return 0.0;
  std::complex<double> prod = 1.0;
  for (int j = 0; j < r; ++j) prod *= std::complex<double>(phi(n - j));
  return prod;
}

/// Reference <(a+)^r a^r> = <phi(N) phi(N-1) ... phi(N-r+1)> by direct summation.
/// The weight e^(-n x) is spread over the r factors as e^(-n x / r) each, so the
/// product stays finite near the edge of the convergence domain.
template <StructureFunction F>
double oracle_dist_r(const F& phi, const ModeState& mode, Order order, const SeriesConfig& cfg = {}) {
  const int r = order.value();
  const double x = mode.x();
  const auto term = [&](long n) -> std::complex<double> {
    if (n < r) return 0.0;
    const double w = std::exp(-static_cast<double>(n) * x / r);
    std::complex<double> prod = 1.0;
    for (int j = 0; j < r; ++j) prod *= std::complex<double>(phi(n - j)) * w;
    return prod;
  };
  return require_real(weighted_series_detailed(term, mode, cfg).value, "oracle_dist_r");
}

/// Reference intercept oracle_dist_r(r) / oracle_dist_r(1)^r - 1.
template <StructureFunction F>
double oracle_intercept_r(const F& phi, const ModeState& mode, Order order, const SeriesConfig& cfg = {}) {
  const double mean = oracle_dist_r(phi, mode, Order(1), cfg);
  const double scale = std::abs(thermal_average([&](long n) { return std::abs(std::complex<double>(phi(n))); }, mode, cfg));
  if (std::abs(mean) < kZeroDenominator * scale) {
    throw ZeroDenominator("oracle mean occupation " + shortest_repr(mean) + " vanishes at x=" +
                          shortest_repr(mode.x()));
  }
  return oracle_dist_r(phi, mode, order, cfg) / std::pow(mean, order.value()) - 1.0;
}

}  // namespace stdq

#pragma once

// Self-verification: runs every invariant family of the library over a grid
// and reports the worst residual and where it occurred.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "stdq/deformation.hpp"
#include "stdq/fock.hpp"
#include "stdq/model.hpp"
#include "stdq/oracle.hpp"
#include "stdq/qkernel.hpp"

namespace stdq {

enum class VerifyPreset { quick, full };

inline VerifyPreset parse_preset(std::string_view s) {
  if (s == "quick") return VerifyPreset::quick;
  if (s == "full") return VerifyPreset::full;
  throw ConfigError("unknown verify preset '" + std::string(s) + "'");
}

/// The closed forms under test. Swappable so that a deliberately broken
/// implementation can be fed through the suite.
struct ModelFunctions {
  using Unary = std::function<double(const DeformationParameter&, const ModeState&)>;
  using Ordered = std::function<double(const DeformationParameter&, const ModeState&, Order)>;

  Unary mean = mean_occupation;
  Unary dist_2 = stdq::dist_2;
  Unary dist_3 = stdq::dist_3;
  Unary dist_4 = stdq::dist_4;
  Ordered dist_r = stdq::dist_r;
  Ordered intercept_r = stdq::intercept_r;
};

struct FamilyResult {
  std::string name;
  bool pass = true;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string worst_point;
  std::size_t checks = 0;
};

struct VerifyReport {
  std::vector<FamilyResult> families;

  bool all_pass() const {
    for (const auto& f : families) {
      if (!f.pass) return false;
    }
    return true;
  }
};

namespace detail {

/// |a - b| / |b|, or |a - b| when b == 0.
inline double rel_diff(double a, double b) {
  const double d = std::abs(a - b);
  return b == 0.0 ? d : d / std::abs(b);
}

class FamilyAccumulator {
 public:
  FamilyAccumulator(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  /// Records a residual that is compared against the family tolerance.
  void record(double residual, const std::string& point) { record(residual, result_.tolerance, point); }

  /// Records a residual with its own tolerance; the reported worst value is
  /// the one with the largest residual/tolerance ratio.
  void record(double residual, double tolerance, const std::string& point) {
    ++result_.checks;
    const double score = std::isnan(residual) ? INFINITY : residual / tolerance;
    if (score > worst_score_) {
      worst_score_ = score;
      result_.worst = residual;
      result_.worst_point = point;
    }
    if (!(residual <= tolerance)) result_.pass = false;
  }

  /// Records an exact (integer) identity.
  void record_exact(bool holds, const std::string& point) {
    if (holds) {
      ++result_.checks;
      if (worst_score_ < 0.0) worst_score_ = 0.0;
      return;
    }
    fail(point, "exact identity violated");
  }

  void fail(const std::string& point, const std::string& what) {
    ++result_.checks;
    result_.pass = false;
    if (worst_score_ < INFINITY) {
      worst_score_ = INFINITY;
      result_.worst = INFINITY;
      result_.worst_point = point + " (" + what + ")";
    }
  }

  FamilyResult finish() && { return std::move(result_); }

 private:
  FamilyResult result_;
  double worst_score_ = -1.0;
};

inline std::string point(const DeformationParameter& dp, double x, int r) {
  return dp.repr() + " x=" + shortest_repr(x) + " r=" + std::to_string(r);
}

struct VerifyGrid {
  std::vector<DeformationParameter> real_q;
  std::vector<DeformationParameter> phase_q;
  std::vector<double> x;
  int max_r = 4;
  int spec_points_per_axis = 4;
};

inline VerifyGrid make_grid(VerifyPreset preset) {
  using DP = DeformationParameter;
  VerifyGrid g;
  if (preset == VerifyPreset::quick) {
    g.real_q = {DP::real(0.8), DP::real(1.0), DP::real(1.25), DP::real(2.0)};
    g.phase_q = {DP::phase(0.2), DP::phase(std::numbers::pi / 3), DP::phase(2.0)};
    g.x = {0.2, 1.0, 3.0, 6.0};
    g.max_r = 4;
    g.spec_points_per_axis = 4;
  } else {
    g.real_q = {DP::real(0.5), DP::real(0.7), DP::real(0.8), DP::real(0.9), DP::real(1.0),
                DP::real(1.1), DP::real(1.25), DP::real(1.4), DP::real(2.0)};
    g.phase_q = {DP::phase(0.2), DP::phase(0.3), DP::phase(0.7), DP::phase(-0.7),
                 DP::phase(std::numbers::pi / 6), DP::phase(std::numbers::pi / 3), DP::phase(2.0)};
    g.x = {0.1, 0.2, 0.5, 1.0, 2.0, 3.0, 4.5, 6.0};
    g.max_r = 6;
    g.spec_points_per_axis = 10;
  }
  return g;
}

inline std::vector<DeformationParameter> all_deformations(const VerifyGrid& g) {
  auto all = g.real_q;
  all.insert(all.end(), g.phase_q.begin(), g.phase_q.end());
  return all;
}

inline bool valid(const DeformationParameter& dp, double x, int r) {
  return domain_check(dp, ModeState::from_x(x), Order(r)).valid;
}

inline FamilyResult verify_symmetry(const VerifyGrid& g, const ModelFunctions& m) {
  FamilyAccumulator acc("symmetry", 1e-12);
  for (const auto& dp : all_deformations(g)) {
    const auto inv = dp.inverse();
    for (long n = 0; n <= 20; ++n) {
      acc.record(rel_diff(std_bracket(n, inv), std_bracket(n, dp)), 1e-15, dp.repr() + " n=" + std::to_string(n));
    }
    for (double x : g.x) {
      for (int r = 1; r <= g.max_r; ++r) {
        if (!valid(dp, x, r)) continue;
        const auto mode = ModeState::from_x(x);
        try {
          acc.record(rel_diff(m.dist_r(inv, mode, Order(r)), m.dist_r(dp, mode, Order(r))), point(dp, x, r) + " dist");
          acc.record(rel_diff(m.intercept_r(inv, mode, Order(r)) + 1.0, m.intercept_r(dp, mode, Order(r)) + 1.0),
                     point(dp, x, r) + " intercept");
        } catch (const ZeroDenominator&) {
          // Zeros of the mean are mapped by the oracle family; nothing to compare here.
        } catch (const Error& e) {
          acc.fail(point(dp, x, r), e.what());
        }
      }
    }
  }
  return std::move(acc).finish();
}

inline FamilyResult verify_limits(const VerifyGrid& g, const ModelFunctions& m) {
  FamilyAccumulator acc("limit", 1e-12);
  const auto one = DeformationParameter::real(1.0);
  for (double x : g.x) {
    const auto mode = ModeState::from_x(x);
    for (int r = 1; r <= g.max_r; ++r) {
      try {
        acc.record(rel_diff(m.dist_r(one, mode, Order(r)), classical_limit_dist(mode, Order(r))),
                   point(one, x, r) + " classical dist");
        acc.record(rel_diff(m.intercept_r(one, mode, Order(r)), detail::factorial(r) - 1.0),
                   point(one, x, r) + " classical intercept");
      } catch (const Error& e) {
        acc.fail(point(one, x, r), e.what());
      }
    }
  }
  // r = 1 collapse and large-x approach to {r}_q! - 1.
  for (const auto& dp : all_deformations(g)) {
    for (double x : g.x) {
      if (!valid(dp, x, 1)) continue;
      const auto mode = ModeState::from_x(x);
      try {
        const double mean = m.mean(dp, mode);
        acc.record(rel_diff(m.dist_r(dp, mode, Order(1)), mean), point(dp, x, 1) + " r=1 dist");
        acc.record(std::abs(m.intercept_r(dp, mode, Order(1))), point(dp, x, 1) + " r=1 intercept");
      } catch (const ZeroDenominator&) {
      } catch (const Error& e) {
        acc.fail(point(dp, x, 1), e.what());
      }
    }
    for (int r = 1; r <= g.max_r; ++r) {
      const auto mode = ModeState::from_x(40.0);
      try {
        const double asym = intercept_asymptotic(dp, Order(r));
        acc.record(std::abs(m.intercept_r(dp, mode, Order(r)) - asym) / (1.0 + std::abs(asym)),
                   point(dp, 40.0, r) + " asymptote");
      } catch (const Error& e) {
        acc.fail(point(dp, 40.0, r), e.what());
      }
    }
  }
  return std::move(acc).finish();
}

inline FamilyResult verify_specialization(const VerifyGrid& g, const ModelFunctions& m) {
  FamilyAccumulator acc("specialization", 1e-12);
  const int n = g.spec_points_per_axis;
  // Real q in [0.6, 1.6] plus phases in (0, pi), each crossed with x in [r|ln q| + 0.3, 6].
  std::vector<DeformationParameter> dps;
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    dps.push_back(i % 2 == 0 ? DeformationParameter::real(0.6 + t) : DeformationParameter::phase(0.15 + 2.8 * t));
  }
  for (int r = 2; r <= 4; ++r) {
    const auto& special = r == 2 ? m.dist_2 : r == 3 ? m.dist_3 : m.dist_4;
    for (const auto& dp : dps) {
      const double lo = static_cast<double>(r) * std::abs(dp.log_modulus()) + 0.3;
      for (int j = 0; j < n; ++j) {
        const double x = lo + (6.0 - lo) * (n == 1 ? 0.0 : static_cast<double>(j) / (n - 1));
        const auto mode = ModeState::from_x(x);
        try {
          acc.record(rel_diff(special(dp, mode), m.dist_r(dp, mode, Order(r))), point(dp, x, r));
        } catch (const Error& e) {
          acc.fail(point(dp, x, r), e.what());
        }
      }
    }
  }
  return std::move(acc).finish();
}

inline FamilyResult verify_identities(const VerifyGrid& g) {
  FamilyAccumulator acc("identity", 1e-12);
  const int r_max = 12;
  for (int r = 1; r <= r_max; ++r) {
    const auto expansion = product_expansion(r);
    const auto row = gaussian_binomial_row(r);
    std::uint64_t binom = 1;
    for (int k = 0; k <= r; ++k) {
      const auto expected = row[static_cast<std::size_t>(k)].substituted(2).shifted(k * (k + 1));
      const std::string where = "r=" + std::to_string(r) + " k=" + std::to_string(k);
      acc.record_exact(expansion[static_cast<std::size_t>(k)].coefficient == expected, where + " product expansion");
      std::uint64_t total = 0;
      for (int s = 0; s <= r * (r + 1) / 2; ++s) total += partition_count(k, r, s);
      acc.record_exact(total == binom, where + " partition sum");
      acc.record_exact(row[static_cast<std::size_t>(k)].coefficient_sum() == static_cast<std::int64_t>(binom),
                       where + " q-binomial at 1");
      binom = binom * static_cast<std::uint64_t>(r - k) / static_cast<std::uint64_t>(k + 1);
    }
  }
  // Hybrid forms of {n}_q. Residuals are measured against the cancellation-free
  // size n (|q|^(n-1) + |q|^(1-n))/2 so that zeros of {n}_q on the unit circle
  // do not inflate them.
  for (const auto& dp : all_deformations(g)) {
    for (long n = 1; n <= 20; ++n) {
      const double std_value = std_bracket(n, dp);
      const double scale = std::max(std::abs(std_value),
                                    0.5 * static_cast<double>(n) * (std::abs(dp.pow(n - 1)) + std::abs(dp.pow(1 - n))));
      const double diff_form = static_cast<double>(n) * (bm_bracket(n, dp) - bm_bracket(n - 2, dp)) / 2.0;
      acc.record(std::abs(diff_form - std_value) / scale, dp.repr() + " n=" + std::to_string(n) + " difference form");
      const double denom = bm_bracket(n - 1, dp);
      if (std::abs(denom) > 1e-9) {
        const double ratio_form = static_cast<double>(n) * bm_bracket(2 * (n - 1), dp) / (2.0 * denom);
        acc.record(std::abs(ratio_form - std_value) / scale, dp.repr() + " n=" + std::to_string(n) + " ratio form");
      }
    }
    // Expanded product prod_j (q^(n-j) + q^(j-n)) against the partition form.
    for (int r = 1; r <= 6; ++r) {
      const auto expansion = product_expansion(r);
      for (long n = 0; n <= 30; ++n) {
        std::complex<double> direct = 1.0;
        for (int j = 1; j <= r; ++j) direct *= dp.pow(n - j) + dp.pow(j - n);
        ComplexNeumaierSum expanded;
        double magnitude = 0.0;
        for (const auto& term : expansion) {
          for (const auto& [e, c] : term.coefficient.terms()) {
            const long power = static_cast<long>(r) * n - static_cast<long>(r) * (r + 1) / 2 - 2L * term.k * n + e;
            const auto v = static_cast<double>(c) * dp.pow(power);
            expanded.add(v);
            magnitude += std::abs(v);
          }
        }
        acc.record(std::abs(expanded.value() - direct) / std::max(std::abs(direct), magnitude),
                   dp.repr() + " r=" + std::to_string(r) + " n=" + std::to_string(n) + " product form");
      }
    }
  }
  return std::move(acc).finish();
}

inline FamilyResult verify_algebra(const VerifyGrid& g) {
  FamilyAccumulator acc("algebra", 1e-11);
  auto dps = all_deformations(g);
  dps.push_back(DeformationParameter::phase(std::numbers::pi / 4));  // {3}_q = 0 here
  for (const auto& dp : dps) {
    for (int n_max : {2, 8, 12}) {
      acc.record(fock_algebra_check(dp, n_max), dp.repr() + " n_max=" + std::to_string(n_max));
    }
  }
  return std::move(acc).finish();
}

/// |phi(n)| <= n (|q|^(n-1) + |q|^(1-n)) / 2: the STD bracket without the
/// cancellation between its two terms (equal to n on the unit circle).
struct StdMagnitudeStructure {
  DeformationParameter dp;
  std::complex<double> operator()(long n) const {
    return 0.5 * static_cast<double>(n) * (std::abs(dp.pow(n - 1)) + std::abs(dp.pow(1 - n)));
  }
};

/// Below this fraction of the cancellation-free magnitude a distribution is
/// judged against that magnitude instead of its own (possibly exactly zero) value.
inline constexpr double kCancellationFloor = 1e-4;

inline FamilyResult verify_oracle(const VerifyGrid& g, const ModelFunctions& m) {
  FamilyAccumulator acc("oracle", 1e-10);
  const SeriesConfig cfg;
  for (const auto& dp : all_deformations(g)) {
    const StdStructure phi{dp};
    for (double x : g.x) {
      for (int r = 1; r <= g.max_r; ++r) {
        if (!valid(dp, x, r)) continue;
        const auto mode = ModeState::from_x(x);
        double scale = 0.0;
        try {
          const double oracle = oracle_dist_r(phi, mode, Order(r), cfg);
          scale = kCancellationFloor * oracle_dist_r(StdMagnitudeStructure{dp}, mode, Order(r), cfg);
          const double denom = std::max(std::abs(oracle), scale);
          acc.record(std::abs(m.dist_r(dp, mode, Order(r)) - oracle) / denom, point(dp, x, r) + " dist");
          if (r == 1) acc.record(std::abs(m.mean(dp, mode) - oracle) / denom, point(dp, x, r) + " mean");
        } catch (const Error& e) {
          acc.fail(point(dp, x, r), e.what());
          continue;
        }
        try {
          const double oracle = oracle_intercept_r(phi, mode, Order(r), cfg);
          const double mean = oracle_dist_r(phi, mode, Order(1), cfg);
          const double denom = std::max(std::abs(oracle + 1.0), scale / std::pow(std::abs(mean), r));
          acc.record(std::abs(m.intercept_r(dp, mode, Order(r)) - oracle) / denom, 1e-9,
                     point(dp, x, r) + " intercept");
        } catch (const ZeroDenominator&) {
          // Both routes must refuse a vanishing mean occupation.
          try {
            m.intercept_r(dp, mode, Order(r));
            acc.fail(point(dp, x, r), "closed form accepted a vanishing mean");
          } catch (const ZeroDenominator&) {
          }
        } catch (const Error& e) {
          acc.fail(point(dp, x, r), e.what());
        }
      }
    }
  }
  return std::move(acc).finish();
}

}  // namespace detail

inline VerifyReport run_verify(VerifyPreset preset, const ModelFunctions& model = {}) {
  const auto grid = detail::make_grid(preset);
  VerifyReport report;
  report.families.push_back(detail::verify_symmetry(grid, model));
  report.families.push_back(detail::verify_limits(grid, model));
  report.families.push_back(detail::verify_specialization(grid, model));
  report.families.push_back(detail::verify_identities(grid));
  report.families.push_back(detail::verify_algebra(grid));
  report.families.push_back(detail::verify_oracle(grid, model));
  return report;
}

inline std::string format_report(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& f : report.families) {
    char worst[32];
    std::snprintf(worst, sizeof(worst), "%.3e", f.worst);
    os << (f.pass ? "PASS " : "FAIL ") << f.name << "  checks=" << f.checks << "  worst=" << worst
       << "  at " << (f.worst_point.empty() ? "-" : f.worst_point) << "\n";
  }
  os << (report.all_pass() ? "all families passed" : "verification FAILED") << "\n";
  return os.str();
}

}  // namespace stdq

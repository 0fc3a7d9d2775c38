#pragma once

// Parameter sweeps over (q or theta, x, r) producing one SweepRow per grid point.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "stdq/deformation.hpp"
#include "stdq/errors.hpp"
#include "stdq/model.hpp"
#include "stdq/oracle.hpp"

namespace stdq {

enum class Quantity { mean, dist, intercept, asymptote };
enum class OutputFormat { csv, json };
enum class RowStatus { ok, domain_error, zero_denominator, non_convergent };

inline const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::mean: return "mean";
    case Quantity::dist: return "dist";
    case Quantity::intercept: return "intercept";
    case Quantity::asymptote: return "asymptote";
  }
  return "unknown";
}

inline const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::domain_error: return "domain_error";
    case RowStatus::zero_denominator: return "zero_denominator";
    case RowStatus::non_convergent: return "non_convergent";
  }
  return "unknown";
}

inline Quantity parse_quantity(std::string_view s) {
  if (s == "mean") return Quantity::mean;
  if (s == "dist") return Quantity::dist;
  if (s == "intercept") return Quantity::intercept;
  if (s == "asymptote") return Quantity::asymptote;
  throw ConfigError("unknown quantity '" + std::string(s) + "'");
}

inline RowStatus parse_status(std::string_view s) {
  if (s == "ok") return RowStatus::ok;
  if (s == "domain_error") return RowStatus::domain_error;
  if (s == "zero_denominator") return RowStatus::zero_denominator;
  if (s == "non_convergent") return RowStatus::non_convergent;
  throw ConfigError("unknown status '" + std::string(s) + "'");
}

inline OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + std::string(s) + "'");
}

struct SweepSpec {
  std::vector<DeformationParameter> deformations;
  /// Ignored for Quantity::asymptote, whose rows carry x = +inf.
  std::vector<double> x_grid;
  /// Ignored for Quantity::mean, whose rows carry r = 1.
  std::vector<int> orders;
  Quantity quantity = Quantity::dist;
  OutputFormat output_format = OutputFormat::csv;
  /// When set, every row also carries the brute-force series value at this tolerance.
  std::optional<double> series_tolerance;

  void validate() const {
    if (deformations.empty()) throw ConfigError("sweep: deformation grid is empty");
    if (quantity != Quantity::asymptote) {
      if (x_grid.empty()) throw ConfigError("sweep: x grid is empty");
      for (double x : x_grid) {
        if (!std::isfinite(x) || !(x > 0.0)) throw ConfigError("sweep: x values must be positive, got " + shortest_repr(x));
      }
    }
    if (quantity != Quantity::mean) {
      if (orders.empty()) throw ConfigError("sweep: order list is empty");
      for (int r : orders) {
        if (r < 1 || r > Order::kMax) throw ConfigError("sweep: order r out of range: " + std::to_string(r));
      }
    }
    if (series_tolerance && !(*series_tolerance > 0.0 && *series_tolerance < 1.0)) {
      throw ConfigError("sweep: oracle tolerance must lie in (0, 1)");
    }
  }
};

struct SweepRow {
  std::string q_repr;
  double x = 0.0;
  int r = 1;
  Quantity quantity = Quantity::dist;
  std::optional<double> value;
  std::optional<double> oracle_value;
  std::optional<double> abs_diff;
  RowStatus status = RowStatus::ok;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

namespace detail {

inline double closed_form_value(Quantity quantity, const DeformationParameter& dp, double x, int r) {
  switch (quantity) {
    case Quantity::mean: return mean_occupation(dp, ModeState::from_x(x));
    case Quantity::dist: return dist_r(dp, ModeState::from_x(x), Order(r));
    case Quantity::intercept: return intercept_r(dp, ModeState::from_x(x), Order(r));
    case Quantity::asymptote: return intercept_asymptotic(dp, Order(r));
  }
  throw ConfigError("unknown quantity");
}

inline std::optional<double> oracle_value(Quantity quantity, const DeformationParameter& dp, double x, int r,
                                          const SeriesConfig& cfg) {
  const StdStructure phi{dp};
  switch (quantity) {
    case Quantity::mean: return oracle_dist_r(phi, ModeState::from_x(x), Order(1), cfg);
    case Quantity::dist: return oracle_dist_r(phi, ModeState::from_x(x), Order(r), cfg);
    case Quantity::intercept: return oracle_intercept_r(phi, ModeState::from_x(x), Order(r), cfg);
    case Quantity::asymptote: return std::nullopt;
  }
  return std::nullopt;
}

inline SweepRow evaluate_point(const SweepSpec& spec, const DeformationParameter& dp, double x, int r) {
  SweepRow row{dp.repr(), x, r, spec.quantity, std::nullopt, std::nullopt, std::nullopt, RowStatus::ok};
  try {
    const double value = closed_form_value(spec.quantity, dp, x, r);
    if (spec.series_tolerance) {
      const SeriesConfig cfg{*spec.series_tolerance, SeriesConfig{}.max_terms};
      row.oracle_value = oracle_value(spec.quantity, dp, x, r, cfg);
      if (row.oracle_value) row.abs_diff = std::abs(value - *row.oracle_value);
    }
    row.value = value;
  } catch (const ZeroDenominator&) {
    row.status = RowStatus::zero_denominator;
  } catch (const NonConvergent&) {
    row.status = RowStatus::non_convergent;
  } catch (const DomainError&) {
    row.status = RowStatus::domain_error;
  } catch (const OverflowError&) {
    row.status = RowStatus::domain_error;
  }
  if (row.status != RowStatus::ok) {
    row.value.reset();
    row.oracle_value.reset();
    row.abs_diff.reset();
  }
  return row;
}

}  // namespace detail

/// Evaluates every (deformation, x, r) point of the spec. Points outside the
/// convergence domain become error rows; the sweep itself never aborts on them.
/// Rows are ordered by (q_repr, x, r).
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> xs =
      spec.quantity == Quantity::asymptote ? std::vector<double>{std::numeric_limits<double>::infinity()} : spec.x_grid;
  const std::vector<int> rs = spec.quantity == Quantity::mean ? std::vector<int>{1} : spec.orders;

  std::vector<SweepRow> rows;
  rows.reserve(spec.deformations.size() * xs.size() * rs.size());
  for (const auto& dp : spec.deformations) {
    for (double x : xs) {
      for (int r : rs) rows.push_back(detail::evaluate_point(spec, dp, x, r));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.q_repr, a.x, a.r) < std::tie(b.q_repr, b.x, b.r);
  });
  return rows;
}

inline bool has_error_rows(const std::vector<SweepRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status != RowStatus::ok; });
}

// ---------------------------------------------------------------------------
// Grid syntax: a comma-separated list whose items are either plain numbers or
// ranges "start:stop:steps[:log]" (steps = number of points, endpoints included).

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

inline long parse_long(std::string_view s) {
  s = trim(s);
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("cannot parse integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

inline std::vector<double> parse_real_grid(std::string_view text) {
  std::vector<double> out;
  for (auto item : detail::split(text, ',')) {
    item = detail::trim(item);
    const auto parts = detail::split(item, ':');
    if (parts.size() == 1) {
      out.push_back(detail::parse_double(item));
      continue;
    }
    if (parts.size() != 3 && parts.size() != 4) {
      throw ConfigError("range must be start:stop:steps[:log], got '" + std::string(item) + "'");
    }
    const double start = detail::parse_double(parts[0]);
    const double stop = detail::parse_double(parts[1]);
    const long steps = detail::parse_long(parts[2]);
    bool log_spacing = false;
    if (parts.size() == 4) {
      if (detail::trim(parts[3]) != "log") throw ConfigError("range suffix must be 'log'");
      log_spacing = true;
    }
    if (steps < 1) throw ConfigError("range needs at least one step");
    if (log_spacing && !(start > 0.0 && stop > 0.0)) throw ConfigError("log range needs positive endpoints");
    for (long i = 0; i < steps; ++i) {
      const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
      if (i == steps - 1 && steps > 1) {
        out.push_back(stop);
      } else if (log_spacing) {
        out.push_back(start * std::pow(stop / start, t));
      } else {
        out.push_back(start + (stop - start) * t);
      }
    }
  }
  return out;
}

/// Comma-separated integers or inclusive ranges "lo:hi".
inline std::vector<int> parse_order_list(std::string_view text) {
  std::vector<int> out;
  for (auto item : detail::split(text, ',')) {
    const auto parts = detail::split(detail::trim(item), ':');
    if (parts.size() == 1) {
      out.push_back(static_cast<int>(detail::parse_long(parts[0])));
    } else if (parts.size() == 2) {
      const long lo = detail::parse_long(parts[0]);
      const long hi = detail::parse_long(parts[1]);
      if (hi < lo) throw ConfigError("order range must be lo:hi with lo <= hi");
      for (long r = lo; r <= hi; ++r) out.push_back(static_cast<int>(r));
    } else {
      throw ConfigError("bad order list item '" + std::string(item) + "'");
    }
  }
  return out;
}

}  // namespace stdq

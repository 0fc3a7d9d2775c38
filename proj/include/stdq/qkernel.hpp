#pragma once

// q-arithmetic for the symmetric Tamm-Dancoff (STD) oscillator: brackets,
// q-factorials, restricted partition counts and Gaussian binomials.

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "stdq/deformation.hpp"
#include "stdq/errors.hpp"
#include "stdq/laurent_poly.hpp"

namespace stdq {

/// {n}_q = (n/2)(q^(n-1) + q^(-n+1)) in complex arithmetic. Defined for any
/// integer n; the oracle never calls it with n < 0.
inline std::complex<double> std_bracket_complex(long n, const DeformationParameter& dp) {
  if (n == 0) return 0.0;
  return 0.5 * static_cast<double>(n) * (dp.pow(n - 1) + dp.pow(1 - n));
}

/// STD structure function {n}_q, real for every admissible q.
inline double std_bracket(long n, const DeformationParameter& dp) {
  if (n < 0) throw DomainError("std_bracket: n must be non-negative");
  return require_real(std_bracket_complex(n, dp), "std_bracket");
}

/// Biedenharn-Macfarlane bracket [n]_q = (q^n - q^-n)/(q - q^-1) in complex
/// arithmetic. Evaluated as the finite sum q^(n-1) + q^(n-3) + ... + q^(1-n),
/// which has no singularity at q = +-1; [-n]_q = -[n]_q.
inline std::complex<double> bm_bracket_complex(long n, const DeformationParameter& dp) {
  if (dp.is_classical()) return static_cast<double>(n);
  const long m = n < 0 ? -n : n;
  ComplexNeumaierSum sum;
  for (long j = 0; j < m; ++j) sum.add(dp.pow(m - 1 - 2 * j));
  return n < 0 ? -sum.value() : sum.value();
}

inline double bm_bracket(long n, const DeformationParameter& dp) {
  return require_real(bm_bracket_complex(n, dp), "bm_bracket");
}

/// {r}_q! = {1}_q {2}_q ... {r}_q; the empty product is 1.
inline double std_factorial(int r, const DeformationParameter& dp) {
  if (r < 0) throw DomainError("std_factorial: r must be non-negative");
  std::complex<double> prod = 1.0;
  for (int k = 1; k <= r; ++k) prod *= std_bracket_complex(k, dp);
  return require_real(prod, "std_factorial");
}

/// Counts p(k, r, s) of subsets of {1..r} with k elements summing to s, for a
/// fixed r. Built once by 0/1-knapsack dynamic programming over the largest
/// admissible part, with overflow-checked 64-bit counts.
class PartitionTable {
 public:
  explicit PartitionTable(int r) : r_(r), max_sum_(r * (r + 1) / 2) {
    if (r < 0) throw DomainError("PartitionTable: r must be non-negative");
    counts_.assign(static_cast<std::size_t>((r + 1) * (max_sum_ + 1)), 0);
    at(0, 0) = 1;
    for (int part = 1; part <= r; ++part) {
      // Descending k and s so each part is used at most once.
      for (int k = part; k >= 1; --k) {
        for (int s = max_sum_; s >= part; --s) {
          const std::uint64_t add = at(k - 1, s - part);
          if (add == 0) continue;
          std::uint64_t& dst = at(k, s);
          if (__builtin_add_overflow(dst, add, &dst)) {
            throw OverflowError("partition count overflow at r=" + std::to_string(r));
          }
        }
      }
    }
  }

  int r() const { return r_; }

  std::uint64_t count(int k, int s) const {
    if (k < 0 || k > r_ || s < 0 || s > max_sum_) return 0;
    return counts_[index(k, s)];
  }

 private:
  std::size_t index(int k, int s) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(max_sum_ + 1) + static_cast<std::size_t>(s);
  }
  std::uint64_t& at(int k, int s) { return counts_[index(k, s)]; }

  int r_;
  int max_sum_;
  std::vector<std::uint64_t> counts_;
};

namespace detail {

inline std::shared_ptr<const PartitionTable> partition_table(int r) {
  static std::mutex mutex;
  static std::unordered_map<int, std::shared_ptr<const PartitionTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[r];
  if (!slot) slot = std::make_shared<const PartitionTable>(r);
  return slot;
}

}  // namespace detail

/// p(k, r, s): number of ways to write s as a sum of k distinct integers in
/// [1, r]. Out-of-range arguments give 0; p(0, r, 0) = 1.
inline std::uint64_t partition_count(int k, int r, int s) {
  if (k < 0 || r < 0 || s < 0 || k > r) return 0;
  if (2 * s < k * (k + 1) || 2 * s > (2 * r - k + 1) * k) return 0;
  return detail::partition_table(r)->count(k, s);
}

/// Row r of Gaussian binomials (r choose k)_b, k = 0..r, as exact polynomials
/// in b. Built by the Pascal recurrence
///   (r choose k)_b = (r-1 choose k-1)_b + b^k (r-1 choose k)_b.
inline std::vector<LaurentPoly> gaussian_binomial_row(int r) {
  if (r < 0) throw DomainError("gaussian_binomial_row: r must be non-negative");
  std::vector<LaurentPoly> row{LaurentPoly::constant(1)};
  for (int n = 1; n <= r; ++n) {
    std::vector<LaurentPoly> next(static_cast<std::size_t>(n + 1));
    next[0] = LaurentPoly::constant(1);
    next[static_cast<std::size_t>(n)] = LaurentPoly::constant(1);
    for (int k = 1; k < n; ++k) {
      next[static_cast<std::size_t>(k)] =
          row[static_cast<std::size_t>(k - 1)] + row[static_cast<std::size_t>(k)].shifted(k);
    }
    row = std::move(next);
  }
  return row;
}

/// (r choose k)_b as an exact polynomial in b (callers substitute b = q^2).
inline LaurentPoly gaussian_binomial(int r, int k) {
  if (r < 0 || k < 0 || k > r) {
    throw DomainError("gaussian_binomial: need 0 <= k <= r, got r=" + std::to_string(r) +
                      ", k=" + std::to_string(k));
  }
  return gaussian_binomial_row(r)[static_cast<std::size_t>(k)];
}

/// One coefficient of the expansion of prod_{j=1..r} (1 + (q^2)^(j-N)) in
/// powers (q^2)^(-kN): the polynomial sum_s p(k, r, s) q^(2s).
struct ExpansionTerm {
  int k = 0;
  LaurentPoly coefficient;
};

inline std::vector<ExpansionTerm> product_expansion(int r) {
  if (r < 1) throw DomainError("product_expansion: r must be positive");
  std::vector<ExpansionTerm> out;
  out.reserve(static_cast<std::size_t>(r + 1));
  const auto table = detail::partition_table(r);
  for (int k = 0; k <= r; ++k) {
    LaurentPoly poly;
    const int s_lo = k * (k + 1) / 2;
    const int s_hi = (2 * r - k + 1) * k / 2;
    for (int s = s_lo; s <= s_hi; ++s) {
      const std::uint64_t c = table->count(k, s);
      if (c > static_cast<std::uint64_t>(INT64_MAX)) throw OverflowError("partition count exceeds int64");
      poly.add_term(2 * s, static_cast<std::int64_t>(c));
    }
    out.push_back({k, std::move(poly)});
  }
  return out;
}

}  // namespace stdq

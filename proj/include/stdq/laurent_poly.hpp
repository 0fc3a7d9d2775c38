#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <utility>

#include "stdq/compensated_sum.hpp"
#include "stdq/deformation.hpp"
#include "stdq/errors.hpp"

namespace stdq {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer coefficient overflow in addition");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer coefficient overflow in multiplication");
  return out;
}

}  // namespace detail

/// Exact integer Laurent polynomial in one variable. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
class LaurentPoly {
 public:
  using Terms = std::map<int, std::int64_t>;

  LaurentPoly() = default;

  LaurentPoly(std::initializer_list<std::pair<const int, std::int64_t>> terms) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static LaurentPoly constant(std::int64_t c) { return monomial(0, c); }

  static LaurentPoly monomial(int exponent, std::int64_t c = 1) {
    LaurentPoly p;
    p.add_term(exponent, c);
    return p;
  }

  void add_term(int exponent, std::int64_t c) {
    if (c == 0) return;
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
      terms_.emplace(exponent, c);
      return;
    }
    it->second = detail::checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::int64_t coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
  }

  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  /// Multiplication by the monomial v^shift.
  LaurentPoly shifted(int shift) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e + shift, c);
    return p;
  }

  /// Substitution v -> v^factor (e.g. factor 2 turns a polynomial in b into one in q with b = q^2).
  LaurentPoly substituted(int factor) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.add_term(e * factor, c);
    return p;
  }

  /// Exact value at v = 1.
  std::int64_t coefficient_sum() const {
    std::int64_t s = 0;
    for (const auto& [e, c] : terms_) s = detail::checked_add(s, c);
    return s;
  }

  /// Value at v = q. Monomials are summed in ascending exponent order with
  /// compensated summation.
  std::complex<double> evaluate(const DeformationParameter& dp) const {
    ComplexNeumaierSum sum;
    for (const auto& [e, c] : terms_) sum.add(static_cast<double>(c) * dp.pow(e));
    return sum.value();
  }

  /// Value at v = q times exp(log_scale); each monomial is scaled before
  /// summation so large powers do not overflow.
  std::complex<double> evaluate_scaled(const DeformationParameter& dp, long extra_exponent,
                                       double log_scale) const {
    ComplexNeumaierSum sum;
    for (const auto& [e, c] : terms_) {
      sum.add(static_cast<double>(c) * dp.scaled_pow(e + extra_exponent, log_scale));
    }
    return sum.value();
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) p.add_term(ea + eb, detail::checked_mul(ca, cb));
    }
    return p;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : p.terms_) {
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      const auto mag = c < 0 ? -c : c;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << "*";
      os << "v";
      if (e != 1) os << "^" << e;
    }
    return os;
  }

 private:
  Terms terms_;
};

}  // namespace stdq

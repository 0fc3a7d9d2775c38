#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <variant>

#include "stdq/errors.hpp"

namespace stdq {

/// Shortest decimal string that round-trips to the same double.
inline std::string shortest_repr(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

/// Real deformation q > 0. The value is kept as a base and an orientation flag
/// so that inverse() is exact: q^m and (1/q)^(-m) are computed by the same
/// floating operations and agree bit for bit.
struct RealDeformation {
  double base = 1.0;
  bool inverted = false;

  double value() const { return inverted ? 1.0 / base : base; }
};

/// Phase-like deformation q = exp(i theta), |theta| <= pi.
struct PhaseDeformation {
  double theta = 0.0;
};

/// The single deformation knob of the STD oscillator.
class DeformationParameter {
 public:
  static DeformationParameter real(double q) {
    if (!std::isfinite(q) || !(q > 0.0)) {
      throw DomainError("deformation q must be positive and finite, got " + shortest_repr(q));
    }
    return DeformationParameter(RealDeformation{q, false});
  }

  static DeformationParameter phase(double theta) {
    if (!std::isfinite(theta) || std::abs(theta) > std::numbers::pi) {
      throw DomainError("phase theta must lie in [-pi, pi], got " + shortest_repr(theta));
    }
    return DeformationParameter(PhaseDeformation{theta});
  }

  bool is_real() const { return std::holds_alternative<RealDeformation>(value_); }
  bool is_phase() const { return std::holds_alternative<PhaseDeformation>(value_); }

  /// q for the real variant (throws for the phase variant).
  double q() const {
    if (auto* r = std::get_if<RealDeformation>(&value_)) return r->value();
    throw DomainError("q() called on a phase deformation");
  }

  /// theta for the phase variant (throws for the real variant).
  double theta() const {
    if (auto* p = std::get_if<PhaseDeformation>(&value_)) return p->theta;
    throw DomainError("theta() called on a real deformation");
  }

  std::complex<double> as_complex() const { return pow(1); }

  /// Real(q) -> Real(1/q), Phase(theta) -> Phase(-theta).
  DeformationParameter inverse() const {
    if (auto* r = std::get_if<RealDeformation>(&value_)) {
      return DeformationParameter(RealDeformation{r->base, !r->inverted});
    }
    return DeformationParameter(PhaseDeformation{-std::get<PhaseDeformation>(value_).theta});
  }

  /// q^m for integer m.
  std::complex<double> pow(long m) const {
    if (auto* r = std::get_if<RealDeformation>(&value_)) {
      const long e = r->inverted ? -m : m;
      if (e >= 0) return std::pow(r->base, static_cast<double>(e));
      return 1.0 / std::pow(r->base, static_cast<double>(-e));
    }
    const double th = std::get<PhaseDeformation>(value_).theta;
    return std::polar(1.0, static_cast<double>(m) * th);
  }

  /// q^m * exp(log_scale), evaluated without intermediate overflow when q^m alone
  /// would leave the double range.
  std::complex<double> scaled_pow(long m, double log_scale) const {
    if (auto* r = std::get_if<RealDeformation>(&value_)) {
      const long e = r->inverted ? -m : m;
      const double log_pow = static_cast<double>(e) * std::log(r->base);
      if (std::abs(log_pow) < 600.0 && std::abs(log_scale) < 600.0) {
        return pow(m) * std::exp(log_scale);
      }
      return std::exp(log_pow + log_scale);
    }
    const double th = std::get<PhaseDeformation>(value_).theta;
    return std::polar(std::exp(log_scale), static_cast<double>(m) * th);
  }

  /// ln|q|; zero in the phase case.
  double log_modulus() const {
    if (auto* r = std::get_if<RealDeformation>(&value_)) {
      return r->inverted ? -std::log(r->base) : std::log(r->base);
    }
    return 0.0;
  }

  /// q == 1 (real) or theta == 0 (phase): the undeformed oscillator.
  bool is_classical() const {
    if (auto* r = std::get_if<RealDeformation>(&value_)) return r->base == 1.0;
    return std::get<PhaseDeformation>(value_).theta == 0.0;
  }

  /// "q=<value>" or "theta=<radians>", shortest round-trip formatting.
  std::string repr() const {
    if (is_real()) return "q=" + shortest_repr(q());
    return "theta=" + shortest_repr(theta());
  }

  const std::variant<RealDeformation, PhaseDeformation>& variant() const { return value_; }

 private:
  explicit DeformationParameter(std::variant<RealDeformation, PhaseDeformation> v) : value_(v) {}

  std::variant<RealDeformation, PhaseDeformation> value_;
};

}  // namespace stdq

#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stdq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (divergent geometric sum, bad q, bad order, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be real came out with a non-negligible imaginary part.
/// This always indicates an arithmetic bug, never a physical case.
class ImaginaryResidue : public Error {
 public:
  using Error::Error;
};

/// Denominator of an intercept (the mean occupation) vanished.
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

/// Series summation failed to reach the requested tolerance.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic overflowed 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed sweep or command line configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Output could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Relative imaginary tolerance applied to every observable that must be real.
inline constexpr double kImaginaryTolerance = 1e-9;

/// Returns Re(z) after checking |Im z| <= 1e-9 (1 + |Re z|).
inline double require_real(std::complex<double> z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(what) + ": non-finite result");
  }
  if (std::abs(z.imag()) > kImaginaryTolerance * (1.0 + std::abs(z.real()))) {
    throw ImaginaryResidue(std::string(what) + ": imaginary residue " + std::to_string(z.imag()) +
                           " on real part " + std::to_string(z.real()));
  }
  return z.real();
}

}  // namespace stdq

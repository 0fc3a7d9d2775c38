#pragma once

// Truncated Fock-space check of the STD oscillator algebra
//   a a+ - a+ a = {N+1}_q - {N}_q,   [N, a+] = a+,   [N, a] = -a.

#include <algorithm>
#include <complex>

#include <Eigen/Dense>

#include "stdq/deformation.hpp"
#include "stdq/errors.hpp"
#include "stdq/qkernel.hpp"

namespace stdq {

struct FockMatrices {
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd a_dag;
  Eigen::MatrixXcd number;
};

/// a|n> = sqrt({n}) |n-1>, a+|n> = sqrt({n+1}) |n+1>, N|n> = n|n> on |0>..|n_max>.
/// Square roots are principal complex roots, so a+ is the transpose of a, not
/// its adjoint, whenever some {n}_q < 0.
inline FockMatrices build_fock_matrices(const DeformationParameter& dp, int n_max) {
  const Eigen::Index dim = n_max + 1;
  FockMatrices m{Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim),
                 Eigen::MatrixXcd::Zero(dim, dim)};
  for (Eigen::Index n = 0; n < dim; ++n) {
    m.number(n, n) = static_cast<double>(n);
    if (n >= 1) m.a(n - 1, n) = std::sqrt(std_bracket_complex(n, dp));
    if (n + 1 < dim) m.a_dag(n + 1, n) = std::sqrt(std_bracket_complex(n + 1, dp));
  }
  return m;
}

/// Expanded right-hand side of the commutator on |n>:
///   (1/2)(1 + (1 - q^-1) n) q^n + (1/2)(1 + (1 - q) n) q^-n.
inline std::complex<double> commutator_rhs_expanded(long n, const DeformationParameter& dp) {
  const double nn = static_cast<double>(n);
  return 0.5 * (1.0 + (1.0 - dp.pow(-1)) * nn) * dp.pow(n) + 0.5 * (1.0 + (1.0 - dp.pow(1)) * nn) * dp.pow(-n);
}

/// Maximum absolute residual of the defining relations, applied to |0>..|n_max - 1>
/// (the top state is dropped: truncation breaks a a+ there). Both the bracket
/// difference {N+1} - {N} and its expanded form are checked.
inline double fock_algebra_check(const DeformationParameter& dp, int n_max) {
  if (n_max < 2) throw DomainError("fock_algebra_check: n_max must be at least 2");
  const auto m = build_fock_matrices(dp, n_max);
  const Eigen::MatrixXcd comm = m.a * m.a_dag - m.a_dag * m.a;
  const Eigen::MatrixXcd n_adag = m.number * m.a_dag - m.a_dag * m.number - m.a_dag;
  const Eigen::MatrixXcd n_a = m.number * m.a - m.a * m.number + m.a;

  double residual = 0.0;
  const Eigen::Index dim = n_max + 1;
  for (Eigen::Index col = 0; col < n_max; ++col) {
    const auto diff = std_bracket_complex(col + 1, dp) - std_bracket_complex(col, dp);
    for (Eigen::Index row = 0; row < dim; ++row) {
      const std::complex<double> expected = row == col ? diff : std::complex<double>(0.0);
      residual = std::max(residual, std::abs(comm(row, col) - expected));
      residual = std::max(residual, std::abs(n_adag(row, col)));
      residual = std::max(residual, std::abs(n_a(row, col)));
    }
    residual = std::max(residual, std::abs(diff - commutator_rhs_expanded(col, dp)));
  }
  return residual;
}

}  // namespace stdq

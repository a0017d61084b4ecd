#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

#include "qsearch/reduced_dynamics.hpp"

namespace qsearch::testing {

/// exp(-iHt) for a 2x2 Hermitian matrix by eigendecomposition. Independent of
/// the closed-form propagator.
inline Mat2 expm_by_eigendecomposition(const Mat2& h, double t) {
  Eigen::Matrix2cd m;
  m << h(0, 0), h(0, 1), h(1, 0), h(1, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m);
  Eigen::Matrix2cd phases = Eigen::Matrix2cd::Zero();
  for (int k = 0; k < 2; ++k) phases(k, k) = std::polar(1.0, -solver.eigenvalues()(k) * t);
  const Eigen::Matrix2cd u = solver.eigenvectors() * phases * solver.eigenvectors().adjoint();
  return Mat2{{u(0, 0), u(0, 1), u(1, 0), u(1, 1)}};
}

/// alpha_k(omega) by direct summation (1/M) sum_j e^{i 2 pi j (omega - k/M)}.
inline std::complex<double> alpha_by_summation(double omega, std::size_t k, std::size_t m) {
  std::complex<double> acc{};
  const double md = static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    acc += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) *
                               (omega - static_cast<double>(k) / md));
  }
  return acc / md;
}

}  // namespace qsearch::testing

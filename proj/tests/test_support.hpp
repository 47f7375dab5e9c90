// SPDX-License-Identifier: Apache-2.0

// Random generators and brute-force oracles shared by the test binaries. None
// of this goes through the library code paths it is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "krein/boundary.hpp"
#include "krein/matrix.hpp"

namespace krein::testing {

using Rng = std::mt19937_64;

inline complex random_complex(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ComplexMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = random_complex(rng);
  return m;
}

/// Product of n random Householder reflections.
inline ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const ComplexVector v = random_matrix(rng, n, 1);
    const ComplexMatrix h = ComplexMatrix::Identity(n, n) - 2.0 * v * v.adjoint() / v.squaredNorm();
    u = h * u;
  }
  return u;
}

inline ComplexMatrix random_hermitian(Rng& rng, Eigen::Index n) {
  const ComplexMatrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint());
}

/// Well-conditioned invertible matrix.
inline ComplexMatrix random_invertible(Rng& rng, Eigen::Index n) {
  return random_matrix(rng, n, n) / std::sqrt(static_cast<double>(n)) +
         3.0 * ComplexMatrix::Identity(n, n);
}

/// (M i(1+U), M (1-U)) for random unitary U and invertible M; every fourth
/// draw forces an eigenvalue 1 of U so that B is singular.
inline std::pair<ComplexMatrix, ComplexMatrix> random_valid_matrices(Rng& rng, Eigen::Index n,
                                                                     int draw = 1) {
  ComplexMatrix u = random_unitary(rng, n);
  if (draw % 4 == 0) {
    const ComplexMatrix w = random_unitary(rng, n);
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) phases[k] = std::polar(1.0, uniform(rng, -3.0, 3.0));
    phases[0] = 1.0;
    u = w * phases.asDiagonal() * w.adjoint();
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix m = random_invertible(rng, n);
  return {m * (complex{0.0, 1.0} * (id + u)), m * (id - u)};
}

inline BoundaryPair random_valid_pair(Rng& rng, Eigen::Index n, int draw = 1) {
  auto [a, b] = random_valid_matrices(rng, n, draw);
  return BoundaryPair::validate(a, b);
}

/// Nonreal z with |Im z| in [0.1, 4] and Re z in [-6, 6].
inline complex random_nonreal(Rng& rng) {
  const double re = uniform(rng, -6.0, 6.0);
  double im = uniform(rng, 0.1, 4.0);
  if (uniform(rng, 0.0, 1.0) < 0.5) im = -im;
  return {re, im};
}

/// Laplace cofactor expansion along the first row.
inline complex cofactor_det(const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  complex total{0.0, 0.0};
  for (Eigen::Index j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index c2 = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, c2++) = m(r, c);
      }
    }
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    total += sign * m(0, j) * cofactor_det(minor);
  }
  return total;
}

inline ComplexMatrix diag(std::initializer_list<complex> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                        static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (complex v : values) {
    m(k, k) = v;
    ++k;
  }
  return m;
}

/// Boundary matrices of the delta coupling at a star vertex with n edges:
/// continuity phi_1(0) = ... = phi_n(0) and sum phi_j'(0) = theta phi(0).
inline std::pair<ComplexMatrix, ComplexMatrix> delta_coupling(Eigen::Index n, double theta) {
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    b(j, j) = 1.0;
    b(j, j + 1) = -1.0;
  }
  for (Eigen::Index j = 0; j < n; ++j) a(n - 1, j) = -1.0;
  b(n - 1, 0) = theta;
  return {a, b};
}

}  // namespace krein::testing

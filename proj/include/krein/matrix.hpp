// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "krein/error.hpp"

namespace krein {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace detail {

inline void require_square(const ComplexMatrix& m, const char* where) {
  if (m.rows() != m.cols()) {
    throw error(errc::non_square, std::string(where) + ": matrix is " + std::to_string(m.rows()) +
                                      "x" + std::to_string(m.cols()));
  }
}

inline Eigen::JacobiSVD<ComplexMatrix> full_svd(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

}  // namespace detail

inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

/// Maximum absolute row sum.
inline double norm_inf(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Largest entry modulus; 0 for empty matrices.
inline double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const complex v = m.data()[k];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

inline complex det(const ComplexMatrix& m) {
  detail::require_square(m, "det");
  if (m.rows() == 0) return {1.0, 0.0};
  return m.partialPivLu().determinant();
}

/// Solves M X = rhs by LU with partial pivoting. A pivot of modulus at or
/// below 1e-13 * ||M||_inf is reported as `errc::singular`.
inline ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& rhs) {
  detail::require_square(m, "solve");
  if (rhs.rows() != m.rows()) {
    throw error(errc::dimension_mismatch, "solve: rhs has " + std::to_string(rhs.rows()) +
                                              " rows, matrix has " + std::to_string(m.rows()));
  }
  if (m.rows() == 0) return ComplexMatrix(0, rhs.cols());
  const Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const double floor = 1e-13 * norm_inf(m);
  const double pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(pivot > floor)) {
    throw error(errc::singular, "solve: pivot " + std::to_string(pivot) + " below threshold");
  }
  return lu.solve(rhs);
}

/// Singular values in descending order, min(rows, cols) of them.
inline std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  const Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

/// Default numerical-rank cutoff: 1e-12 * sigma_max * max(rows, cols).
inline double default_rank_tolerance(const ComplexMatrix& m, const std::vector<double>& sv) {
  if (sv.empty()) return 0.0;
  return 1e-12 * sv.front() * static_cast<double>(std::max(m.rows(), m.cols()));
}

/// Number of singular values strictly above `tol`; tol == 0 selects the
/// default cutoff.
inline Eigen::Index rank(const ComplexMatrix& m, double tol = 0.0) {
  const auto sv = singular_values(m);
  const double cut = tol > 0.0 ? tol : default_rank_tolerance(m, sv);
  return std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; });
}

/// Orthonormal basis of span(M) by modified Gram-Schmidt with one
/// reorthogonalization pass. Columns whose residual falls to 1e-10 times the
/// largest input column norm are treated as dependent and dropped.
inline ComplexMatrix orthonormal_columns(const ComplexMatrix& m) {
  double scale = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) scale = std::max(scale, m.col(j).norm());
  ComplexMatrix q(m.rows(), m.cols());
  Eigen::Index kept = 0;
  if (scale == 0.0) return q.leftCols(0);
  const double drop = 1e-10 * scale;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    ComplexVector v = m.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < kept; ++k) v -= q.col(k).dot(v) * q.col(k);
    }
    const double nv = v.norm();
    if (nv <= drop) continue;
    q.col(kept++) = v / nv;
  }
  return q.leftCols(kept);
}

/// Left singular vectors of M whose singular value exceeds `cutoff`.
inline ComplexMatrix range_basis(const ComplexMatrix& m, double cutoff) {
  if (m.size() == 0) return ComplexMatrix(m.rows(), 0);
  const auto svd = detail::full_svd(m);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of ker M: right singular vectors whose singular value is
/// at most `cutoff`, plus the directions beyond min(rows, cols).
inline ComplexMatrix null_space(const ComplexMatrix& m, double cutoff) {
  if (m.cols() == 0) return ComplexMatrix(0, 0);
  if (m.rows() == 0) return ComplexMatrix::Identity(m.cols(), m.cols());
  const auto svd = detail::full_svd(m);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > cutoff) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

/// Horizontal block concatenation (L | R).
inline ComplexMatrix hstack(const ComplexMatrix& left, const ComplexMatrix& right) {
  if (left.rows() != right.rows()) {
    throw error(errc::dimension_mismatch, "hstack: row counts differ");
  }
  ComplexMatrix out(left.rows(), left.cols() + right.cols());
  out.leftCols(left.cols()) = left;
  out.rightCols(right.cols()) = right;
  return out;
}

/// Vertical block concatenation (T; B).
inline ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw error(errc::dimension_mismatch, "vstack: column counts differ");
  }
  ComplexMatrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

}  // namespace krein

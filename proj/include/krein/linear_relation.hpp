// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "krein/error.hpp"
#include "krein/matrix.hpp"

namespace krein {

/// Singular-value cutoff used when intersecting, projecting and re-spanning
/// subspaces given by orthonormal bases.
inline constexpr double kSubspaceCutoff = 1e-10;

/// Largest admissible sine of a principal angle for subset/equality tests.
inline constexpr double kPrincipalAngleTol = 1e-9;

/// A linear subspace of V (+) V with V = C^n, held as an orthonormal basis.
/// Rows [0, n) of the basis carry the first component x1, rows [n, 2n) the
/// second component x2.
class LinearRelation {
 public:
  /// The relation spanned by the columns of `columns` (2n x k).
  static LinearRelation from_columns(Eigen::Index n, const ComplexMatrix& columns) {
    if (columns.rows() != 2 * n) {
      throw error(errc::dimension_mismatch, "relation columns must have 2n rows");
    }
    return LinearRelation(n, orthonormal_columns(columns));
  }

  static LinearRelation zero(Eigen::Index n) { return LinearRelation(n, ComplexMatrix(2 * n, 0)); }

  static LinearRelation whole_space(Eigen::Index n) {
    return LinearRelation(n, ComplexMatrix::Identity(2 * n, 2 * n));
  }

  /// gr L = {(x, Lx)}.
  static LinearRelation graph(const ComplexMatrix& op) {
    detail::require_square(op, "graph");
    const Eigen::Index n = op.rows();
    return from_columns(n, vstack(ComplexMatrix::Identity(n, n), op));
  }

  [[nodiscard]] Eigen::Index n() const noexcept { return n_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return basis_.cols(); }
  [[nodiscard]] const ComplexMatrix& basis() const noexcept { return basis_; }
  [[nodiscard]] ComplexMatrix first() const { return basis_.topRows(n_); }
  [[nodiscard]] ComplexMatrix second() const { return basis_.bottomRows(n_); }

 private:
  friend LinearRelation make_relation_from_orthonormal(Eigen::Index, ComplexMatrix);

  LinearRelation(Eigen::Index n, ComplexMatrix basis) : n_(n), basis_(std::move(basis)) {}

  Eigen::Index n_;
  ComplexMatrix basis_;
};

/// Wraps a basis that is already orthonormal (no re-orthogonalization).
inline LinearRelation make_relation_from_orthonormal(Eigen::Index n, ComplexMatrix basis) {
  return LinearRelation(n, std::move(basis));
}

namespace detail {

inline void require_same_n(const LinearRelation& a, const LinearRelation& b, const char* where) {
  if (a.n() != b.n()) throw error(errc::dimension_mismatch, std::string(where) + ": n differs");
}

/// Swaps the two blocks and negates the new second one: J(x1, x2) = (x2, -x1).
inline ComplexMatrix apply_j(const ComplexMatrix& columns, Eigen::Index n) {
  return vstack(columns.bottomRows(n), -columns.topRows(n));
}

}  // namespace detail

using VectorPair = std::pair<ComplexVector, ComplexVector>;

inline LinearRelation from_spanning_pairs(Eigen::Index n, const std::vector<VectorPair>& pairs) {
  ComplexMatrix cols(2 * n, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [x1, x2] = pairs[k];
    if (x1.size() != n || x2.size() != n) {
      throw error(errc::dimension_mismatch, "spanning pair " + std::to_string(k) +
                                                " does not have length n=" + std::to_string(n));
    }
    const auto c = static_cast<Eigen::Index>(k);
    cols.col(c).head(n) = x1;
    cols.col(c).tail(n) = x2;
  }
  return LinearRelation::from_columns(n, cols);
}

/// {(x1, x2) : A x1 = B x2}, the null space of (A | -B).
inline LinearRelation lambda_ab(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw error(errc::dimension_mismatch, "lambda_ab: A and B must be square of equal size");
  }
  const ComplexMatrix block = hstack(a, -b);
  const double cut = default_rank_tolerance(block, singular_values(block));
  return make_relation_from_orthonormal(a.rows(), null_space(block, cut));
}

/// Orthonormal basis of dom L in C^n (possibly with zero columns).
inline ComplexMatrix domain(const LinearRelation& rel) {
  return range_basis(rel.first(), kSubspaceCutoff);
}

/// Orthonormal basis of the multivalued part {y : (0, y) in L}.
inline ComplexMatrix multivalued_part(const LinearRelation& rel) {
  const ComplexMatrix coeffs = null_space(rel.first(), kSubspaceCutoff);
  return range_basis(rel.second() * coeffs, kSubspaceCutoff);
}

inline LinearRelation inverse(const LinearRelation& rel) {
  return make_relation_from_orthonormal(rel.n(), vstack(rel.second(), rel.first()));
}

/// {(x, alpha y) : (x, y) in L}.
inline LinearRelation scale(complex alpha, const LinearRelation& rel) {
  const ComplexMatrix cols = vstack(rel.first(), alpha * rel.second());
  const double cut = kSubspaceCutoff * std::max(1.0, std::abs(alpha));
  return make_relation_from_orthonormal(rel.n(), range_basis(cols, cut));
}

/// {(x, y' + y'') : (x, y') in L', (x, y'') in L''}. Coefficient pairs (a, b)
/// with X' a = X'' b parametrize the common domain.
inline LinearRelation sum(const LinearRelation& lhs, const LinearRelation& rhs) {
  detail::require_same_n(lhs, rhs, "sum");
  const Eigen::Index n = lhs.n();
  const Eigen::Index d1 = lhs.dim();
  const ComplexMatrix coeffs = null_space(hstack(lhs.first(), -rhs.first()), kSubspaceCutoff);
  if (coeffs.cols() == 0) return LinearRelation::zero(n);
  const ComplexMatrix ca = coeffs.topRows(d1);
  const ComplexMatrix cb = coeffs.bottomRows(rhs.dim());
  const ComplexMatrix cols = vstack(lhs.first() * ca, lhs.second() * ca + rhs.second() * cb);
  return make_relation_from_orthonormal(n, range_basis(cols, kSubspaceCutoff));
}

/// L* = J (L^perp).
inline LinearRelation adjoint_relation(const LinearRelation& rel) {
  const Eigen::Index n = rel.n();
  // Singular values of an orthonormal basis are all 1, so 0.5 separates cleanly.
  const ComplexMatrix complement = null_space(rel.basis().adjoint(), 0.5);
  return make_relation_from_orthonormal(n, detail::apply_j(complement, n));
}

/// Sine of the largest principal angle from span(L') into span(L''); 0 when
/// L' is contained in L''.
inline double containment_defect(const LinearRelation& sub, const LinearRelation& super) {
  detail::require_same_n(sub, super, "containment_defect");
  if (sub.dim() == 0) return 0.0;
  const ComplexMatrix& q1 = sub.basis();
  const ComplexMatrix& q2 = super.basis();
  const ComplexMatrix residual = q1 - q2 * (q2.adjoint() * q1);
  const auto sv = singular_values(residual);
  return sv.empty() ? 0.0 : std::min(1.0, sv.front());
}

inline bool is_subset(const LinearRelation& sub, const LinearRelation& super) {
  return containment_defect(sub, super) <= kPrincipalAngleTol;
}

inline bool equals(const LinearRelation& lhs, const LinearRelation& rhs) {
  detail::require_same_n(lhs, rhs, "equals");
  return lhs.dim() == rhs.dim() && is_subset(lhs, rhs);
}

inline bool is_symmetric(const LinearRelation& rel) {
  return is_subset(rel, adjoint_relation(rel));
}

inline bool is_selfadjoint(const LinearRelation& rel) {
  return rel.dim() == rel.n() && is_symmetric(rel);
}

/// Matrix of the operator whose graph is (gr Q - L)^{-1}. Throws
/// `errc::not_a_graph` when that relation is not the graph of an everywhere
/// defined operator, i.e. the spectral parameter behind Q is not in the joint
/// resolvent set.
inline ComplexMatrix invert_shifted_graph(const ComplexMatrix& q, const LinearRelation& rel) {
  detail::require_square(q, "invert_shifted_graph");
  if (q.rows() != rel.n()) {
    throw error(errc::dimension_mismatch, "invert_shifted_graph: Q and relation sizes differ");
  }
  const Eigen::Index n = rel.n();
  const LinearRelation inv = inverse(sum(LinearRelation::graph(q), scale(-1.0, rel)));
  if (inv.dim() != n) {
    throw error(errc::not_a_graph, "(gr Q - L)^{-1} has dimension " + std::to_string(inv.dim()) +
                                       ", expected " + std::to_string(n));
  }
  const ComplexMatrix x = inv.first();
  const auto sv = singular_values(x);
  if (sv.empty() || sv.back() <= kSubspaceCutoff) {
    throw error(errc::not_a_graph, "(gr Q - L)^{-1} is not defined on all of V");
  }
  // C X = Y  <=>  X* C* = Y*.
  return solve(x.adjoint(), inv.second().adjoint()).adjoint();
}

}  // namespace krein

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>

#include "krein/error.hpp"
#include "krein/linear_relation.hpp"
#include "krein/matrix.hpp"

namespace krein {

/// Boundary conditions A Gamma1 phi = B Gamma2 phi. A validated pair has AB*
/// Hermitian and (A | B) of full row rank; the matrices are stored as given.
class BoundaryPair {
 public:
  /// Checks both conditions and returns a validated pair. The Hermiticity
  /// defect ||AB* - BA*||_F may not exceed 1e-10 (1 + ||A||_F ||B||_F).
  static BoundaryPair validate(ComplexMatrix a, ComplexMatrix b) {
    BoundaryPair p(std::move(a), std::move(b), false);
    if (p.a_.rows() != p.a_.cols() || p.b_.rows() != p.b_.cols() || p.a_.rows() != p.b_.rows()) {
      throw error(errc::dimension_mismatch, "A and B must be square of equal size");
    }
    if (p.hermiticity_defect_ > p.hermiticity_tolerance()) {
      throw error(errc::not_self_adjoint_condition,
                  "||AB* - BA*|| = " + std::to_string(p.hermiticity_defect_));
    }
    if (p.block_rank_ != p.n()) {
      throw error(errc::rank_deficient, "rank(A|B) = " + std::to_string(p.block_rank_) +
                                            " < n = " + std::to_string(p.n()));
    }
    p.validated_ = true;
    return p;
  }

  /// Wraps (A, B) without enforcing the conditions; `validated()` is false.
  /// Intended for diagnostics and negative controls.
  static BoundaryPair unchecked(ComplexMatrix a, ComplexMatrix b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
      throw error(errc::dimension_mismatch, "A and B must be square of equal size");
    }
    return BoundaryPair(std::move(a), std::move(b), false);
  }

  [[nodiscard]] Eigen::Index n() const noexcept { return a_.rows(); }
  [[nodiscard]] const ComplexMatrix& a() const noexcept { return a_; }
  [[nodiscard]] const ComplexMatrix& b() const noexcept { return b_; }
  [[nodiscard]] bool validated() const noexcept { return validated_; }
  [[nodiscard]] double hermiticity_defect() const noexcept { return hermiticity_defect_; }
  [[nodiscard]] double hermiticity_tolerance() const noexcept {
    return 1e-10 * (1.0 + a_.norm() * b_.norm());
  }
  [[nodiscard]] Eigen::Index block_rank() const noexcept { return block_rank_; }

 private:
  BoundaryPair(ComplexMatrix a, ComplexMatrix b, bool validated)
      : a_(std::move(a)), b_(std::move(b)), validated_(validated) {
    if (a_.rows() == b_.rows() && a_.cols() == b_.cols()) {
      const ComplexMatrix ab = a_ * b_.adjoint();
      hermiticity_defect_ = (ab - ab.adjoint()).norm();
      block_rank_ = rank(hstack(a_, b_));
    }
  }

  ComplexMatrix a_;
  ComplexMatrix b_;
  bool validated_ = false;
  double hermiticity_defect_ = 0.0;
  Eigen::Index block_rank_ = 0;
};

/// ker A* and ker B* intersect trivially iff the stacked (A*; B*) has rank n.
inline bool kernel_intersection_trivial(const BoundaryPair& p) {
  return rank(vstack(p.a().adjoint(), p.b().adjoint())) == p.n();
}

/// The relation spanned by (B* e_k, A* e_k); equal to lambda_ab(A, B) for a
/// validated pair.
inline LinearRelation canonical_range_form(const BoundaryPair& p) {
  return LinearRelation::from_columns(p.n(), vstack(p.b().adjoint(), p.a().adjoint()));
}

/// The unitary U with lambda_ab(A, B) = lambda_ab(i(1 + U), 1 - U). It maps
/// x2 + i x1 to x2 - i x1 over the relation, i.e. U (A* + iB*) = A* - iB*.
inline ComplexMatrix to_unitary(const BoundaryPair& p) {
  const complex i{0.0, 1.0};
  const ComplexMatrix w_plus = p.a().adjoint() + i * p.b().adjoint();
  const ComplexMatrix w_minus = p.a().adjoint() - i * p.b().adjoint();
  ComplexMatrix u;
  try {
    u = solve(w_plus.adjoint(), w_minus.adjoint()).adjoint();
  } catch (const error& e) {
    throw error(errc::numerically_singular, std::string("to_unitary: ") + e.what());
  }
  const Eigen::Index n = p.n();
  const double defect = (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm();
  if (defect > 1e-9) {
    throw error(errc::numerically_singular, "to_unitary: ||U*U - I|| = " + std::to_string(defect));
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (!equals(lambda_ab(i * (id + u), id - u), lambda_ab(p.a(), p.b()))) {
    throw error(errc::numerically_singular, "to_unitary: relation not reproduced");
  }
  return u;
}

/// (A, B) = (i(1 + U), 1 - U), validated.
inline BoundaryPair from_unitary(const ComplexMatrix& u) {
  detail::require_square(u, "from_unitary");
  const Eigen::Index n = u.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double defect = (u.adjoint() * u - id).norm();
  if (defect > 1e-9) {
    throw error(errc::not_unitary, "||U*U - I|| = " + std::to_string(defect));
  }
  const complex i{0.0, 1.0};
  return BoundaryPair::validate(i * (id + u), id - u);
}

/// L = B^{-1} A, so that A Gamma1 = B Gamma2 reads Gamma2 = L Gamma1.
inline ComplexMatrix disjoint_operator(const BoundaryPair& p) {
  try {
    return solve(p.b(), p.a());
  } catch (const error&) {
    throw error(errc::not_disjoint, "B is singular; the extension is not disjoint from H0");
  }
}

}  // namespace krein

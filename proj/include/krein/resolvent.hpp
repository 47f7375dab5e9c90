// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "krein/boundary.hpp"
#include "krein/error.hpp"
#include "krein/linear_relation.hpp"
#include "krein/matrix.hpp"
#include "krein/models.hpp"

namespace krein {

namespace detail {

inline void require_model_size(const BoundaryPair& p, Eigen::Index n) {
  if (p.n() != n) {
    throw error(errc::dimension_mismatch, "boundary pair has n=" + std::to_string(p.n()) +
                                              ", model has n=" + std::to_string(n));
  }
}

template <class F>
ComplexMatrix singular_as_singular_at_z(F&& f) {
  try {
    return f();
  } catch (const error& e) {
    if (e.code() == errc::singular) throw error(errc::singular_at_z, e.what());
    throw;
  }
}

}  // namespace detail

/// C(z) = B* (Q B* - A*)^{-1}.
inline ComplexMatrix correction_matrix_form1(const BoundaryPair& p, const ComplexMatrix& q) {
  detail::require_model_size(p, q.rows());
  const ComplexMatrix m = q * p.b().adjoint() - p.a().adjoint();
  // X M = B*  <=>  M* X* = B.
  return detail::singular_as_singular_at_z([&] { return ComplexMatrix(solve(m.adjoint(), p.b()).adjoint()); });
}

/// C(z) = (B Q - A)^{-1} B.
inline ComplexMatrix correction_matrix_form2(const BoundaryPair& p, const ComplexMatrix& q) {
  detail::require_model_size(p, q.rows());
  const ComplexMatrix m = p.b() * q - p.a();
  return detail::singular_as_singular_at_z([&] { return solve(m, p.b()); });
}

/// C^L(z) through the relation calculus: (gr Q(z) - lambda_ab(A, B))^{-1}.
template <SpectralModel M>
ComplexMatrix abstract_correction(const BoundaryPair& p, const M& model, complex z) {
  detail::require_model_size(p, model.size());
  return invert_shifted_graph(model.q_matrix(z), lambda_ab(p.a(), p.b()));
}

struct NondegeneracyReport {
  complex det1;      // det(Q B* - A*)
  complex det2;      // det(B Q - A)
  double sigma_min;  // smallest singular value of B Q - A
  bool nondegenerate;
};

/// Both Q B* - A* and B Q - A are checked; `nondegenerate` requires
/// sigma_min > 1e-8.
template <SpectralModel M>
NondegeneracyReport check_nondegeneracy(const BoundaryPair& p, const M& model, complex z) {
  detail::require_model_size(p, model.size());
  const ComplexMatrix q = model.q_matrix(z);
  const ComplexMatrix m1 = q * p.b().adjoint() - p.a().adjoint();
  const ComplexMatrix m2 = p.b() * q - p.a();
  const auto sv = singular_values(m2);
  const double smin = sv.empty() ? 0.0 : sv.back();
  return {det(m1), det(m2), smin, smin > 1e-8};
}

/// Integral kernel of R^{A,B}(z) for one fixed z:
/// G(x, y) = G0(x, y) - sum_jk C_jk g^j_z(x) g^k_z(y), C = (B Q(z) - A)^{-1} B.
template <SpectralModel M>
class ResolventKernel {
 public:
  using point_type = typename M::point_type;

  ResolventKernel(const BoundaryPair& p, const M& model, complex z)
      : model_(&model), z_(z) {
    detail::require_model_size(p, model.size());
    correction_ = correction_matrix_form2(p, model.q_matrix(z));
  }

  [[nodiscard]] complex operator()(const point_type& x, const point_type& y) const {
    const complex g0 = model_->free_green(x, y, z_);
    const Eigen::Index n = model_->size();
    ComplexVector gx(n);
    ComplexVector gy(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      gx[j] = model_->gamma_value(j, x, z_);
      gy[j] = model_->gamma_value(j, y, z_);
    }
    return g0 - (gx.transpose() * (correction_ * gy)).value();
  }

  [[nodiscard]] const ComplexMatrix& correction() const noexcept { return correction_; }
  [[nodiscard]] complex z() const noexcept { return z_; }

 private:
  const M* model_;
  complex z_;
  ComplexMatrix correction_;
};

template <SpectralModel M>
complex perturbed_green(const BoundaryPair& p, const M& model, const typename M::point_type& x,
                        const typename M::point_type& y, complex z) {
  return ResolventKernel<M>(p, model, z)(x, y);
}

}  // namespace krein

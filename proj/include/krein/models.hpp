// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "krein/error.hpp"
#include "krein/matrix.hpp"

namespace krein {

/// Square root with positive real part, cut along (-inf, 0].
inline complex sqrt_branch(complex w) {
  if (std::abs(w.imag()) <= 1e-14 && w.real() <= 1e-14) {
    throw error(errc::on_branch_cut, "sqrt_branch: argument on (-inf, 0]");
  }
  return std::sqrt(w);
}

/// Both reference operators have res H0 = C \ [0, inf); points within 1e-12
/// of the half-line are excluded.
inline bool resolvent_set_contains(complex z) {
  const double dist = z.real() >= 0.0 ? std::abs(z.imag()) : std::abs(z);
  return dist > 1e-12;
}

/// kappa(z) = sqrt(-z) on the resolvent set of H0.
inline complex kappa(complex z) {
  if (!resolvent_set_contains(z)) {
    throw error(errc::outside_resolvent_set,
                "z = " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) + "i");
  }
  return sqrt_branch(-z);
}

/// Boundary data (Gamma1 phi, Gamma2 phi) of an element phi = gamma_z x.
struct BoundaryValues {
  ComplexVector gamma1;
  ComplexVector gamma2;
};

/// Finite-dimensional data of a boundary value space for a pair (S, H0): the
/// Q-function, the Gamma-field basis g^j_z and the Green kernel of H0.
template <class M>
concept SpectralModel = requires(const M& m, complex z, Eigen::Index j,
                                 const typename M::point_type& p, const ComplexVector& x) {
  { m.size() } -> std::convertible_to<Eigen::Index>;
  { m.q_matrix(z) } -> std::convertible_to<ComplexMatrix>;
  { m.gamma_value(j, p, z) } -> std::convertible_to<complex>;
  { m.free_green(p, p, z) } -> std::convertible_to<complex>;
  { m.boundary_values(x, z) } -> std::convertible_to<BoundaryValues>;
};

/// A point on edge `edge` at distance `x` from the vertex.
struct EdgePoint {
  Eigen::Index edge = 0;
  double x = 0.0;
};

/// n half-lines joined at one vertex, H0 the direct sum of Neumann Laplacians.
/// Boundary maps: Gamma1 phi = -phi'(0), Gamma2 phi = phi(0).
class StarGraphModel {
 public:
  using point_type = EdgePoint;

  explicit StarGraphModel(Eigen::Index edges) : n_(edges) {
    if (edges < 1) throw error(errc::invalid_model, "star graph needs at least one edge");
  }

  [[nodiscard]] Eigen::Index size() const noexcept { return n_; }

  /// Q(z) = E_n / sqrt(-z).
  [[nodiscard]] ComplexMatrix q_matrix(complex z) const {
    const complex k = kappa(z);
    return ComplexMatrix::Identity(n_, n_) / k;
  }

  /// g^j_z(p) = exp(-sqrt(-z) x) / sqrt(-z) on edge j, zero elsewhere.
  [[nodiscard]] complex gamma_value(Eigen::Index j, const EdgePoint& p, complex z) const {
    check(p);
    check_index(j);
    const complex k = kappa(z);
    if (p.edge != j) return {0.0, 0.0};
    return std::exp(-k * p.x) / k;
  }

  [[nodiscard]] complex free_green(const EdgePoint& p, const EdgePoint& q, complex z) const {
    check(p);
    check(q);
    const complex k = kappa(z);
    if (p.edge != q.edge) return {0.0, 0.0};
    return (std::exp(-k * std::abs(p.x - q.x)) + std::exp(-k * (p.x + q.x))) / (2.0 * k);
  }

  /// phi_j(t) = x_j exp(-k t) / k, so -phi_j'(0) = x_j and phi_j(0) = x_j / k.
  [[nodiscard]] BoundaryValues boundary_values(const ComplexVector& x, complex z) const {
    if (x.size() != n_) throw error(errc::dimension_mismatch, "boundary_values: |x| != n");
    const complex k = kappa(z);
    return {x, x / k};
  }

 private:
  void check(const EdgePoint& p) const {
    check_index(p.edge);
    if (!std::isfinite(p.x) || p.x < 0.0) {
      throw error(errc::invalid_point, "edge coordinate must be finite and >= 0");
    }
  }
  void check_index(Eigen::Index j) const {
    if (j < 0 || j >= n_) throw error(errc::invalid_point, "edge index out of range");
  }

  Eigen::Index n_;
};

using Point3 = std::array<double, 3>;

inline double distance(const Point3& a, const Point3& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

/// n point interactions at distinct centers in R^3; H0 is the free Laplacian.
/// Boundary values are the coefficients of phi(x) ~ Gamma1_j / (4 pi |x - y_j|)
/// + Gamma2_j near each center.
class PointInteraction3DModel {
 public:
  using point_type = Point3;

  static constexpr double kMinSeparation = 1e-9;
  static constexpr double kCenterGuard = 1e-12;

  explicit PointInteraction3DModel(std::vector<Point3> centers) : centers_(std::move(centers)) {
    if (centers_.empty()) throw error(errc::invalid_model, "at least one center required");
    min_separation_ = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers_.size(); ++j) {
      for (double c : centers_[j]) {
        if (!std::isfinite(c)) throw error(errc::invalid_model, "center coordinates must be finite");
      }
      for (std::size_t k = 0; k < j; ++k) {
        min_separation_ = std::min(min_separation_, distance(centers_[j], centers_[k]));
      }
    }
    if (min_separation_ < kMinSeparation) {
      throw error(errc::invalid_model, "centers closer than 1e-9");
    }
  }

  [[nodiscard]] Eigen::Index size() const noexcept {
    return static_cast<Eigen::Index>(centers_.size());
  }
  [[nodiscard]] const std::vector<Point3>& centers() const noexcept { return centers_; }

  [[nodiscard]] ComplexMatrix q_matrix(complex z) const {
    const complex k = kappa(z);
    const Eigen::Index n = size();
    ComplexMatrix q(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      q(j, j) = -k / (4.0 * std::numbers::pi);
      for (Eigen::Index l = 0; l < j; ++l) {
        q(j, l) = kernel(distance(centers_[j], centers_[l]), k);
        q(l, j) = q(j, l);
      }
    }
    return q;
  }

  [[nodiscard]] complex gamma_value(Eigen::Index j, const Point3& p, complex z) const {
    if (j < 0 || j >= size()) throw error(errc::invalid_point, "center index out of range");
    check(p);
    const complex k = kappa(z);
    const double r = distance(p, centers_[j]);
    if (r < kCenterGuard) throw error(errc::point_at_center, "evaluation point coincides with a center");
    return kernel(r, k);
  }

  [[nodiscard]] complex free_green(const Point3& p, const Point3& q, complex z) const {
    check(p);
    check(q);
    const complex k = kappa(z);
    const double r = distance(p, q);
    if (r < kCenterGuard) throw error(errc::coincident_points, "G0 is singular at x = y");
    return kernel(r, k);
  }

  /// Gamma2 is read off from phi = gamma_z x near each center by Richardson
  /// extrapolation of phi(y_j + h e) - x_j / (4 pi h) over h and 2h.
  [[nodiscard]] BoundaryValues boundary_values(const ComplexVector& x, complex z) const {
    const Eigen::Index n = size();
    if (x.size() != n) throw error(errc::dimension_mismatch, "boundary_values: |x| != n");
    const complex k = kappa(z);
    double h = 1e-4 / std::max(1.0, std::abs(k));
    if (n > 1) h = std::min(h, 1e-2 * min_separation_);
    BoundaryValues out{x, ComplexVector(n)};
    for (Eigen::Index j = 0; j < n; ++j) {
      auto regular_part = [&](double step) {
        const Point3& c = centers_[static_cast<std::size_t>(j)];
        const Point3 p{c[0] + step, c[1], c[2]};
        complex phi{0.0, 0.0};
        for (Eigen::Index l = 0; l < n; ++l) phi += x[l] * kernel(distance(p, centers_[l]), k);
        return phi - x[j] / (4.0 * std::numbers::pi * step);
      };
      out.gamma2[j] = 2.0 * regular_part(h) - regular_part(2.0 * h);
    }
    return out;
  }

 private:
  static complex kernel(double r, complex k) {
    return std::exp(-k * r) / (4.0 * std::numbers::pi * r);
  }
  static void check(const Point3& p) {
    for (double c : p) {
      if (!std::isfinite(c)) throw error(errc::invalid_point, "coordinates must be finite");
    }
  }

  std::vector<Point3> centers_;
  double min_separation_ = 0.0;
};

/// gamma*_zeta gamma_z obtained from Q(z) - Q*(zeta) = (z - conj(zeta)) gamma*_zeta gamma_z.
template <SpectralModel M>
ComplexMatrix gamma_gram(const M& model, complex z, complex zeta) {
  const complex denom = z - std::conj(zeta);
  const ComplexMatrix qz = model.q_matrix(z);
  const ComplexMatrix qzeta = model.q_matrix(zeta);
  if (std::abs(denom) < 1e-12) {
    throw error(errc::coincident_spectral_params, "z - conj(zeta) vanishes");
  }
  return (qz - qzeta.adjoint()) / denom;
}

}  // namespace krein

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "krein/boundary.hpp"
#include "krein/error.hpp"
#include "krein/matrix.hpp"
#include "krein/models.hpp"
#include "krein/resolvent.hpp"

namespace krein {

/// Real-axis scan window and refinement controls.
struct ScanConfig {
  double z_min = -10.0;
  double z_max = -1e-2;
  int grid_points = 400;
  double refine_tol = 1e-10;
  double detect_threshold = 0.0;  // 0: 1e-4 * median of sigma_min over the grid
  unsigned threads = 1;           // 0: hardware concurrency
};

/// A real eigenvalue z of H^{A,B} below the continuous spectrum together with
/// x in ker(B Q(z) - A); gamma_z x is the eigenfunction.
struct EigenvalueHit {
  double z = 0.0;
  ComplexVector null_vector;
  double sigma_min = 0.0;
  double residual = 0.0;
  Eigen::Index multiplicity = 1;
};

inline void validate(const ScanConfig& cfg) {
  if (!(cfg.z_min < cfg.z_max) || !(cfg.z_max < 0.0)) {
    throw error(errc::bad_range, "scan window must satisfy z_min < z_max < 0");
  }
  if (cfg.grid_points < 2) throw error(errc::bad_range, "grid_points must be >= 2");
  if (!(cfg.refine_tol > 0.0)) throw error(errc::bad_range, "refine_tol must be positive");
  if (cfg.detect_threshold < 0.0) throw error(errc::bad_range, "detect_threshold must be >= 0");
}

/// Grid ascending in z from z_min to z_max, geometric in |z|.
inline std::vector<double> scan_grid(const ScanConfig& cfg) {
  std::vector<double> grid(static_cast<std::size_t>(cfg.grid_points));
  const double ratio = cfg.z_max / cfg.z_min;
  for (int i = 0; i < cfg.grid_points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        cfg.z_min * std::pow(ratio, static_cast<double>(i) / (cfg.grid_points - 1));
  }
  grid.back() = cfg.z_max;
  return grid;
}

namespace detail {

template <SpectralModel M>
double sigma_min_at(const BoundaryPair& p, const M& model, double z) {
  const auto sv = singular_values(p.b() * model.q_matrix(complex{z, 0.0}) - p.a());
  return sv.back();
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Golden-section minimization of f on [lo, hi] down to width tol.
template <class F>
double golden_minimize(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = f(mid);
  if (fm <= fc && fm <= fd) return mid;
  return fc <= fd ? c : d;
}

}  // namespace detail

/// Locates real eigenvalues in [z_min, z_max] as zeros of sigma_min(B Q(z) - A).
/// Every local minimum of the grid samples is refined by golden-section search
/// over its two neighbouring cells and kept when the refined value is at most
/// the detection threshold. Hits are sorted by z; the result does not depend
/// on the thread count.
template <SpectralModel M>
std::vector<EigenvalueHit> scan_eigenvalues(const BoundaryPair& p, const M& model,
                                            const ScanConfig& cfg) {
  validate(cfg);
  detail::require_model_size(p, model.size());
  const std::vector<double> grid = scan_grid(cfg);
  const std::size_t count = grid.size();
  std::vector<double> sigma(count);
  detail::parallel_for(count, cfg.threads,
                       [&](std::size_t i) { sigma[i] = detail::sigma_min_at(p, model, grid[i]); });

  double threshold = cfg.detect_threshold;
  if (threshold == 0.0) {
    std::vector<double> sorted = sigma;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(count / 2), sorted.end());
    threshold = 1e-4 * sorted[count / 2];
  }

  std::vector<EigenvalueHit> hits;
  auto f = [&](double z) { return detail::sigma_min_at(p, model, z); };
  for (std::size_t i = 0; i < count; ++i) {
    const bool left_ok = i == 0 || sigma[i] <= sigma[i - 1];
    const bool right_ok = i + 1 == count || sigma[i] <= sigma[i + 1];
    if (!left_ok || !right_ok) continue;
    const bool strict = (i > 0 && sigma[i] < sigma[i - 1]) || (i + 1 < count && sigma[i] < sigma[i + 1]);
    if (!strict) continue;
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[std::min(i + 1, count - 1)];
    const double z = detail::golden_minimize(f, lo, hi, cfg.refine_tol);
    const ComplexMatrix m = p.b() * model.q_matrix(complex{z, 0.0}) - p.a();
    const Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smin = s[s.size() - 1];
    if (smin > threshold) continue;
    EigenvalueHit hit;
    hit.z = z;
    hit.sigma_min = smin;
    hit.null_vector = svd.matrixV().col(m.cols() - 1);
    hit.residual = (m * hit.null_vector).norm();
    hit.multiplicity = std::count_if(s.data(), s.data() + s.size(), [&](double v) { return v <= threshold; });
    hits.push_back(std::move(hit));
  }

  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.z < b.z; });
  std::vector<EigenvalueHit> merged;
  const double merge_gap = 1e3 * cfg.refine_tol;
  for (auto& h : hits) {
    if (!merged.empty() && h.z - merged.back().z <= merge_gap) {
      if (h.sigma_min < merged.back().sigma_min) merged.back() = std::move(h);
      continue;
    }
    merged.push_back(std::move(h));
  }
  return merged;
}

struct EigenpairReport {
  double residual = 0.0;       // ||A Gamma1 phi - B Gamma2 phi||
  double gamma1_defect = 0.0;  // ||Gamma1 phi - x||
  double threshold = 0.0;
  bool passed = false;
};

/// Recomputes the boundary data of phi = gamma_z x from the model and checks
/// A Gamma1 phi = B Gamma2 phi within 1e-6 (1 + ||A|| + ||B|| ||Q(z)||).
template <SpectralModel M>
EigenpairReport verify_eigenpair(const BoundaryPair& p, const M& model, const EigenvalueHit& hit) {
  detail::require_model_size(p, model.size());
  const complex z{hit.z, 0.0};
  const BoundaryValues bv = model.boundary_values(hit.null_vector, z);
  const ComplexMatrix q = model.q_matrix(z);
  EigenpairReport r;
  r.residual = (p.a() * bv.gamma1 - p.b() * bv.gamma2).norm();
  r.gamma1_defect = (bv.gamma1 - hit.null_vector).norm();
  r.threshold = 1e-6 * (1.0 + p.a().norm() + p.b().norm() * q.norm());
  r.passed = r.residual <= r.threshold && r.gamma1_defect <= r.threshold;
  return r;
}

}  // namespace krein

// SPDX-License-Identifier: Apache-2.0

#include <numbers>

#include <gtest/gtest.h>

#include "krein/spectrum.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace krein {
namespace {

using std::numbers::pi;
using testing::diag;
using testing::Rng;

ScanConfig window(double zmin, double zmax) {
  ScanConfig cfg;
  cfg.z_min = zmin;
  cfg.z_max = zmax;
  return cfg;
}

TEST(ScanConfig, Validation) {
  EXPECT_THROW(validate(window(-1.0, -2.0)), error);
  EXPECT_THROW(validate(window(-1.0, 0.5)), error);
  ScanConfig cfg = window(-2.0, -1.0);
  cfg.grid_points = 1;
  EXPECT_THROW(validate(cfg), error);
  cfg = window(-2.0, -1.0);
  cfg.refine_tol = 0.0;
  EXPECT_THROW(validate(cfg), error);
}

TEST(ScanGrid, GeometricAndAscending) {
  ScanConfig cfg = window(-100.0, -0.01);
  cfg.grid_points = 5;
  const auto grid = scan_grid(cfg);
  ASSERT_EQ(grid.size(), 5u);
  EXPECT_DOUBLE_EQ(grid.front(), -100.0);
  EXPECT_DOUBLE_EQ(grid.back(), -0.01);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    EXPECT_NEAR(grid[i] / grid[i - 1], 0.1, 1e-12);
  }
}

TEST(Scan, RobinHalfLine) {
  const double theta = -2.0;
  const BoundaryPair p = BoundaryPair::validate(diag({1.0}), diag({-theta}));
  const StarGraphModel star(1);
  const auto hits = scan_eigenvalues(p, star, window(-10.0, -0.01));
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_LE(std::abs(hits[0].z - (-theta * theta)), 1e-8);
  EXPECT_NEAR(hits[0].null_vector.norm(), 1.0, 1e-14);
  EXPECT_TRUE(verify_eigenpair(p, star, hits[0]).passed);
}

TEST(Scan, RobinWithoutBoundState) {
  // theta > 0 is repulsive.
  const BoundaryPair p = BoundaryPair::validate(diag({1.0}), diag({-1.5}));
  EXPECT_TRUE(scan_eigenvalues(p, StarGraphModel(1), window(-10.0, -0.01)).empty());
}

TEST(Scan, StarDeltaCoupling) {
  const auto [a, b] = testing::delta_coupling(3, -3.0);
  const BoundaryPair p = BoundaryPair::validate(a, b);
  const StarGraphModel star(3);
  const auto hits = scan_eigenvalues(p, star, window(-10.0, -0.01));
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_LE(std::abs(hits[0].z - (-1.0)), 1e-8);
  EXPECT_EQ(hits[0].multiplicity, 1);
  EXPECT_TRUE(verify_eigenpair(p, star, hits[0]).passed);
  // Eigenfunction is symmetric over the edges.
  const auto& x = hits[0].null_vector;
  EXPECT_LE(std::abs(x[0] - x[1]) + std::abs(x[1] - x[2]), 1e-8);
}

TEST(Scan, DecoupledRobinEdgesHaveMultiplicity) {
  // Same Robin condition on each of three edges: triple eigenvalue at -4.
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const BoundaryPair p = BoundaryPair::validate(id, 2.0 * id);
  const auto hits = scan_eigenvalues(p, StarGraphModel(3), window(-10.0, -0.01));
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_LE(std::abs(hits[0].z + 4.0), 1e-8);
  EXPECT_EQ(hits[0].multiplicity, 3);
}

TEST(Scan, SinglePointInteraction) {
  const double alpha = -1.0 / (4.0 * pi);
  const BoundaryPair p = BoundaryPair::validate(diag({alpha}), diag({1.0}));
  const PointInteraction3DModel point({{0.0, 0.0, 0.0}});
  const auto hits = scan_eigenvalues(p, point, window(-10.0, -0.01));
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_LE(std::abs(hits[0].z - (-1.0)), 1e-8);
  EXPECT_TRUE(verify_eigenpair(p, point, hits[0]).passed);
}

TEST(Scan, TwoCentersMatchBisection) {
  for (double alpha : {-1.0 / (2.0 * pi), -0.1 / (4.0 * pi)}) {
    const double d = 1.0;
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    const BoundaryPair p = BoundaryPair::validate(alpha * id, id);
    const PointInteraction3DModel point({{0.0, 0.0, 0.0}, {0.0, 0.0, d}});
    const auto expected = testing::two_center_energies(alpha, d);
    const auto hits = scan_eigenvalues(p, point, window(-20.0, -1e-3));
    ASSERT_EQ(hits.size(), expected.size()) << "alpha = " << alpha;
    for (std::size_t k = 0; k < hits.size(); ++k) {
      EXPECT_LE(std::abs(hits[k].z - expected[k]), 1e-6);
      EXPECT_TRUE(verify_eigenpair(p, point, hits[k]).passed);
    }
  }
}

TEST(Scan, NeumannHasNoHits) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const BoundaryPair h0 = BoundaryPair::validate(id, 0.0 * id);
  EXPECT_TRUE(scan_eigenvalues(h0, StarGraphModel(2), window(-10.0, -0.01)).empty());
}

TEST(Scan, HitsStayInsideWindow) {
  // Bound state at -4 lies outside [-3, -0.01].
  const BoundaryPair p = BoundaryPair::validate(diag({1.0}), diag({2.0}));
  EXPECT_TRUE(scan_eigenvalues(p, StarGraphModel(1), window(-3.0, -0.01)).empty());
  EXPECT_TRUE(scan_eigenvalues(p, StarGraphModel(1), window(-10.0, -4.5)).empty());
}

TEST(Scan, IndependentOfThreadCount) {
  Rng rng(81);
  const PointInteraction3DModel point({{0.0, 0.0, 0.0}, {0.8, 0.0, 0.0}, {0.0, 1.1, 0.3}});
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const BoundaryPair p = BoundaryPair::validate(-0.15 * id, id);
  ScanConfig serial = window(-30.0, -1e-3);
  ScanConfig parallel = serial;
  parallel.threads = 4;
  const auto a = scan_eigenvalues(p, point, serial);
  const auto b = scan_eigenvalues(p, point, parallel);
  ASSERT_FALSE(a.empty());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].z, b[k].z);
    EXPECT_EQ(a[k].null_vector, b[k].null_vector);
  }
}

TEST(Verify, RejectsPerturbedNullVector) {
  Rng rng(82);
  const auto [a, b] = testing::delta_coupling(3, -3.0);
  const BoundaryPair p = BoundaryPair::validate(a, b);
  const StarGraphModel star(3);
  auto hits = scan_eigenvalues(p, star, window(-10.0, -0.01));
  ASSERT_EQ(hits.size(), 1u);
  EigenvalueHit bad = hits[0];
  bad.null_vector += 0.1 * testing::random_matrix(rng, 3, 1);
  EXPECT_FALSE(verify_eigenpair(p, star, bad).passed);
}

}  // namespace
}  // namespace krein

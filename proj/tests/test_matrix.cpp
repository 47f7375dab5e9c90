// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "krein/matrix.hpp"
#include "test_support.hpp"

namespace krein {
namespace {

using testing::diag;
using testing::random_matrix;
using testing::Rng;

const complex I{0.0, 1.0};

TEST(Adjoint, ConjugateTranspose) {
  EXPECT_TRUE(adjoint(ComplexMatrix::Identity(2, 2)).isApprox(ComplexMatrix::Identity(2, 2)));

  ComplexMatrix one(1, 1);
  one << I;
  EXPECT_EQ(adjoint(one)(0, 0), -I);

  ComplexMatrix m(2, 2);
  m << 1.0, I, 0.0, 2.0;
  ComplexMatrix expected(2, 2);
  expected << 1.0, 0.0, -I, 2.0;
  EXPECT_EQ(adjoint(m), expected);

  const ComplexMatrix rect = ComplexMatrix::Ones(2, 3);
  EXPECT_EQ(adjoint(rect).rows(), 3);
}

TEST(Det, TrivialValues) {
  EXPECT_EQ(det(ComplexMatrix::Identity(5, 5)), complex(1.0));
  const complex d = det(diag({2.0, 3.0 * I}));
  EXPECT_NEAR(std::abs(d - 6.0 * I), 0.0, 1e-15);
}

TEST(Det, NonSquareThrows) {
  try {
    (void)det(ComplexMatrix::Zero(2, 3));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::non_square);
  }
}

TEST(Det, MatchesCofactorExpansion) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 4, 4);
    const complex oracle = testing::cofactor_det(m);
    EXPECT_LE(std::abs(det(m) - oracle), 1e-12 * std::abs(oracle));
  }
}

TEST(Det, Multiplicative) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 4, 4);
    const ComplexMatrix n = random_matrix(rng, 4, 4);
    const complex lhs = det(m * n);
    EXPECT_LE(std::abs(lhs - det(m) * det(n)), 1e-10 * std::abs(lhs));
  }
}

TEST(Solve, TrivialSystems) {
  Rng rng(13);
  const ComplexMatrix b = random_matrix(rng, 3, 2);
  EXPECT_TRUE(solve(ComplexMatrix::Identity(3, 3), b).isApprox(b));
  const ComplexMatrix x = solve(diag({2.0, 4.0}), ComplexMatrix::Identity(2, 2));
  EXPECT_NEAR(std::abs(x(0, 0) - 0.5), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(x(1, 1) - 0.25), 0.0, 1e-16);
  EXPECT_EQ(x(0, 1), complex(0.0));
}

TEST(Solve, ResidualBound) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix m = testing::random_invertible(rng, 5);
    const ComplexMatrix r = random_matrix(rng, 5, 3);
    const ComplexMatrix x = solve(m, r);
    EXPECT_LE((m * x - r).norm(), 1e-10 * (1.0 + r.norm()));
  }
}

TEST(Solve, SingularAndShapeErrors) {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 2.0, 4.0;
  try {
    (void)solve(m, ComplexMatrix::Identity(2, 2));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::singular);
  }
  EXPECT_THROW((void)solve(ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2)), error);
  try {
    (void)solve(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::dimension_mismatch);
  }
}

TEST(SingularValues, TrivialValues) {
  EXPECT_EQ(singular_values(ComplexMatrix::Identity(3, 3)), (std::vector<double>{1.0, 1.0, 1.0}));
  EXPECT_EQ(singular_values(ComplexMatrix::Zero(2, 2)), (std::vector<double>{0.0, 0.0}));
  const auto sv = singular_values(diag({3.0, 4.0 * I}));
  ASSERT_EQ(sv.size(), 2u);
  EXPECT_NEAR(sv[0], 4.0, 1e-14);
  EXPECT_NEAR(sv[1], 3.0, 1e-14);
  EXPECT_EQ(singular_values(ComplexMatrix::Ones(2, 5)).size(), 2u);
}

TEST(SingularValues, UnitaryHasUnitSpectrum) {
  Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix u = testing::random_unitary(rng, 6);
    for (double s : singular_values(u)) EXPECT_NEAR(s, 1.0, 1e-10);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(hstack(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2))), 2);
  EXPECT_EQ(rank(ComplexMatrix::Zero(3, 3)), 0);
  EXPECT_EQ(rank(hstack(ComplexMatrix::Zero(3, 3), ComplexMatrix::Identity(3, 3))), 3);
  // An explicit tolerance overrides the default cutoff.
  EXPECT_EQ(rank(diag({1.0, 1e-6}), 1e-3), 1);
  EXPECT_EQ(rank(diag({1.0, 1e-6})), 2);
}

TEST(Rank, InvariantUnderAdjoint) {
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index r = 1 + trial % 4;
    const ComplexMatrix m = random_matrix(rng, 5, r) * random_matrix(rng, r, 6);
    EXPECT_EQ(rank(m), r);
    EXPECT_EQ(rank(adjoint(m)), rank(m));
  }
}

TEST(OrthonormalColumns, Examples) {
  EXPECT_TRUE(orthonormal_columns(ComplexMatrix::Identity(3, 3)).isApprox(ComplexMatrix::Identity(3, 3)));

  ComplexMatrix col(2, 1);
  col << 2.0, 0.0;
  const ComplexMatrix q = orthonormal_columns(col);
  ASSERT_EQ(q.cols(), 1);
  EXPECT_NEAR(std::abs(q(0, 0) - 1.0), 0.0, 1e-15);

  ComplexMatrix prop(3, 2);
  prop << 1.0, 2.0, I, 2.0 * I, 3.0, 6.0;
  EXPECT_EQ(orthonormal_columns(prop).cols(), 1);

  EXPECT_EQ(orthonormal_columns(ComplexMatrix::Zero(3, 2)).cols(), 0);
}

TEST(OrthonormalColumns, OrthonormalAndSpanning) {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 8, 2) * random_matrix(rng, 2, 5);
    const ComplexMatrix q = orthonormal_columns(m);
    ASSERT_EQ(q.cols(), 2);
    EXPECT_LE((q.adjoint() * q - ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
    EXPECT_LE((m - q * (q.adjoint() * m)).norm(), 1e-10 * m.norm());
  }
}

TEST(NullSpace, WideMatrix) {
  Rng rng(18);
  const ComplexMatrix m = random_matrix(rng, 2, 5);
  const ComplexMatrix k = null_space(m, 1e-10);
  ASSERT_EQ(k.cols(), 3);
  EXPECT_LE((m * k).norm(), 1e-12);
}

}  // namespace
}  // namespace krein

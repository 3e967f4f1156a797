#include <gtest/gtest.h>

#include <random>

#include "carlab/errors.hpp"
#include "carlab/numlin.hpp"
#include "oracles.hpp"

namespace carlab {
namespace {

ComplexMatrix random_matrix(Index r, Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexMatrix m(r, c);
  for (Index k = 0; k < c; ++k) m.col(k) = oracle::random_vector(r, rng);
  return m;
}

TEST(AntilinearMap, ApplyAndAdjoint) {
  const ComplexMatrix k = random_matrix(3, 3, 1);
  const AntilinearMap a(k);
  std::mt19937_64 rng(2);
  const ComplexVector x = oracle::random_vector(3, rng);
  const ComplexVector y = oracle::random_vector(3, rng);
  EXPECT_LT((a.apply(x) - k * x.conjugate()).norm(), 1e-14);
  // <A^* y, x> = conj(<y, A x>)
  const Complex lhs = a.adjoint().apply(y).dot(x);
  const Complex rhs = std::conj(y.dot(a.apply(x)));
  EXPECT_LT(std::abs(lhs - rhs), 1e-12);
  const Complex c(0.3, -1.2);
  EXPECT_LT((a.apply(c * x) - std::conj(c) * a.apply(x)).norm(), 1e-12);
}

TEST(AntilinearMap, CompositionMatchesPointwise) {
  const AntilinearMap a(random_matrix(3, 3, 3));
  const AntilinearMap b(random_matrix(3, 3, 4));
  const ComplexMatrix l = random_matrix(3, 3, 5);
  std::mt19937_64 rng(6);
  const ComplexVector x = oracle::random_vector(3, rng);
  EXPECT_LT((compose(a, b) * x - a.apply(b.apply(x))).norm(), 1e-12);
  EXPECT_LT((compose(a, l).apply(x) - a.apply(l * x)).norm(), 1e-12);
  EXPECT_LT((compose(l, a).apply(x) - l * a.apply(x)).norm(), 1e-12);
  EXPECT_LT((a.sandwich(l) * x - a.apply(l * a.apply(x))).norm(), 1e-12);
}

TEST(Spectral, PsdPowerAndPolar) {
  const ComplexMatrix b = random_matrix(4, 4, 7);
  const ComplexMatrix a = b.adjoint() * b;
  const ComplexMatrix root = psd_power(a, 0.5);
  EXPECT_LT((root * root - a).norm(), 1e-10 * a.norm());
  EXPECT_LT((psd_power(a, -1.0) * a - ComplexMatrix::Identity(4, 4)).norm(), 1e-8);
  const LinearPolar lp = polar_linear(b);
  EXPECT_LT((lp.sgn * lp.abs - b).norm(), 1e-10);
  EXPECT_LT((lp.sgn.adjoint() * lp.sgn - ComplexMatrix::Identity(4, 4)).norm(), 1e-10);
  EXPECT_THROW(eig_hermitian(b), NotHermitian);
}

TEST(Spectral, AntilinearPolar) {
  const AntilinearMap s(random_matrix(4, 4, 8));
  const AntilinearPolar p = polar_antilinear(s);
  const ComplexMatrix root = psd_power(p.delta, 0.5);
  EXPECT_LT((compose(p.j, root).kernel() - s.kernel()).norm(), 1e-9);
  EXPECT_LT((compose(p.j.adjoint(), p.j) - ComplexMatrix::Identity(4, 4)).norm(), 1e-9);
}

TEST(Rank, NullspaceAndRange) {
  ComplexMatrix a = random_matrix(5, 3, 9);
  a.col(2) = a.col(0) - Complex(0, 2) * a.col(1);
  EXPECT_EQ(numerical_rank(a), 2);
  const ComplexMatrix n = nullspace(a);
  ASSERT_EQ(n.cols(), 1);
  EXPECT_LT((a * n).norm(), 1e-12);
  EXPECT_EQ(range_basis(a).cols(), 2);
  EXPECT_LT((pinv(a) * a * pinv(a) - pinv(a)).norm(), 1e-10);
}

TEST(Subspaces, IntersectionMatchesPowerLimit) {
  // Two 3-dimensional subspaces of C^5 sharing a known line.
  const ComplexMatrix m = random_matrix(5, 5, 10);
  const ComplexMatrix shared = m.col(0);
  ComplexMatrix fa(5, 3), fb(5, 3);
  fa << shared, m.col(1), m.col(2);
  fb << shared, m.col(3), m.col(4) + m.col(1);
  const Subspace a = Subspace::span_of(fa);
  const Subspace b = Subspace::span_of(fb);
  const Subspace inter = subspace_intersect(a, b);
  ASSERT_EQ(inter.dim(), 1);
  const oracle::Matrix limit = oracle::intersection_by_powers(a.projection(), b.projection());
  EXPECT_LT((inter.projection() - limit).norm(), 1e-8);
  EXPECT_NEAR(inter.distance(shared), 0.0, 1e-10);
  EXPECT_EQ(span_sum(a, b).dim(), 5);
  EXPECT_EQ(orthocomplement(a).dim(), 2);
  EXPECT_TRUE(subspace_equal(orthocomplement(orthocomplement(a)), a));
}

TEST(Subspaces, FrameDistanceAndExcess) {
  const ComplexMatrix f = range_basis(random_matrix(4, 2, 11));
  EXPECT_LT(frame_distance(f, range_basis(ComplexMatrix(f * random_matrix(2, 2, 12)))), 1e-12);
  const ComplexMatrix bigger = range_basis(random_matrix(4, 3, 13));
  EXPECT_GT(frame_excess(f, bigger), 0.1);
  EXPECT_THROW(Subspace::from_frame(random_matrix(3, 2, 14)), InvalidStructure);
}

TEST(Realify, RoundTrip) {
  const ComplexMatrix m = random_matrix(3, 2, 15);
  EXPECT_EQ(realify(m).rows(), 6);
  EXPECT_LT((complexify(realify(m)) - m).norm(), 1e-15);
}

}  // namespace
}  // namespace carlab

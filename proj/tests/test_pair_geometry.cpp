#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "carlab/errors.hpp"
#include "carlab/instances.hpp"
#include "carlab/pair_geometry.hpp"

namespace carlab {
namespace {

const double kTheta = std::numbers::pi / 3.0;

TEST(E1, DeltaAndGraphs) {
  const Instance e1 = instance_e1();
  const PairFrames f = pair_frames(e1.p, e1.q);
  EXPECT_NEAR(delta_norm(f.P, f.Q), 1.0 / std::sqrt(2.0), 1e-14);
  // Delta_p = 1 on p since |<e1, q>|^2 = 1/2.
  EXPECT_LT((delta_p(e1.p, e1.q) - f.P).norm(), 1e-12);
  // phi(q) = sqrt 2 e1 - q, an isometry of q onto q^perp.
  const ComplexMatrix phi = build_phi(e1.p, e1.q).matrix();
  EXPECT_LT((phi.adjoint() * phi - f.Q).norm(), 1e-12);
  ComplexVector e1v = ComplexVector::Zero(2);
  e1v(0) = 1.0;
  const ComplexVector q = f.q.col(0);
  EXPECT_LT((phi * q - (std::sqrt(2.0) * e1v - q)).norm(), 1e-12);
}

TEST(E1, BetaIsPhaseConjugation) {
  const Instance e1 = instance_e1();
  const AlphaBeta ab = build_alpha_beta(e1.p, e1.q);
  const AntilinearMap beta = ab.beta.antilinear();
  EXPECT_LT(std::abs(beta.kernel()(0, 0) - std::exp(-kI * kTheta)), 1e-12);
  EXPECT_LT(std::abs(beta.kernel()(1, 1)), 1e-12);
  const Spectrum s = spectrum(e1.p, e1.q);
  ASSERT_EQ(s.eigenvalues_of_delta_p.size(), 1u);
  EXPECT_NEAR(s.eigenvalues_of_delta_p[0], 1.0, 1e-12);
  EXPECT_NEAR(s.condition_number, 1.0, 1e-12);
  const ComplexMatrix w = build_w(e1.p, e1.q);
  EXPECT_LT((w.adjoint() * w - e1.q.projection()).norm(), 1e-12);
}

TEST(Kato, NormsAgreeOnRandomPairs) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = random_generic_instance(6, seed);
    const KatoReport k = kato_identities(inst.p, inst.q);
    EXPECT_LT(k.max_defect(), 1e-9) << seed;
    EXPECT_TRUE(k.bicontinuous()) << seed;
    EXPECT_LT(k.delta, 1.0);
  }
}

TEST(Kato, NonGenericThrows) {
  const Instance e3 = instance_e3();
  EXPECT_THROW(kato_identities(e3.p, e3.q), NotGeneric);
  EXPECT_THROW(pair_frames(e3.p, e3.q), NotGeneric);
}

TEST(Halmos, E3Blocks) {
  const Instance e3 = instance_e3();
  const HalmosDecomposition h = halmos(e3.p, e3.q);
  EXPECT_EQ(h.pq.dim(), 1);
  EXPECT_EQ(h.pqperp.dim(), 1);
  EXPECT_EQ(h.h01.dim(), 2);
  EXPECT_EQ(h.h02.dim(), 2);
  EXPECT_EQ(h.h1.dim(), 2);
  EXPECT_LT(check_halmos(h, e3.p, e3.q).max(), 1e-10);
  const BlockRestriction b = restrict_to_block(e3.p, e3.q, h.h1);
  EXPECT_TRUE(is_generic_position(b.p, b.q));
  EXPECT_NEAR(delta_norm(b.p.matrix(), b.q.projection()), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Halmos, MixedInstances) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance m = random_mixed_instance({2, 2, 2}, seed);
    const HalmosDecomposition h = halmos(m.p, m.q);
    EXPECT_EQ(h.h01.dim(), 2);
    EXPECT_EQ(h.h02.dim(), 2);
    EXPECT_EQ(h.h1.dim(), 2);
    EXPECT_LT(check_halmos(h, m.p, m.q).max(), 1e-9);
  }
}

class RandomPair : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomPair, GraphIdentities) {
  const Instance inst = random_generic_instance(4, GetParam());
  const PairFrames f = pair_frames(inst.p, inst.q);
  const ComplexMatrix dp = delta_p(inst.p, inst.q);
  // Delta_p (PQp) = PQ^perp p, checked on the frame of p.
  for (Index k = 0; k < f.p.cols(); ++k) {
    const ComplexVector v = f.p.col(k);
    EXPECT_LT((dp * (f.P * f.Q * v) - f.P * f.Qperp * v).norm(), 1e-9);
  }
  const AlphaBeta ab = build_alpha_beta(inst.p, inst.q);
  const AntilinearMap beta = ab.beta.antilinear();
  EXPECT_LT((compose(beta.adjoint(), beta) - dp).norm(), 1e-9);
  EXPECT_LT((compose(beta, beta) - f.P).norm(), 1e-9);
  EXPECT_LT((ab.alpha.antilinear().kernel() - beta.adjoint().kernel()).norm(), 1e-9);
  const PolarPhi polar = polar_phi(inst.p, inst.q);
  EXPECT_LT((polar.abs_phi - polar.abs_phi_svd).norm(), 1e-9);
  EXPECT_LT((polar.sgn_phi - polar.sgn_phi_svd).norm(), 1e-9);
  const ComplexMatrix w = build_w(inst.p, inst.q);
  EXPECT_LT((w.adjoint() * w - f.Q).norm(), 1e-9);
  EXPECT_LT((w * polar.abs_phi_svd - psd_power(dp, 0.5) * w).norm(), 1e-9);
  const AntilinearMap v = build_v(inst.p, inst.q);
  EXPECT_LT((v.kernel() - build_v_from_sgn(inst.p, inst.q).kernel()).norm(), 1e-9);
  EXPECT_LT((compose(v.adjoint(), v) - f.Q).norm(), 1e-9);
  EXPECT_LT((f.Q * v.kernel()).norm(), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomPair, ::testing::Range<std::uint64_t>(1, 11));

}  // namespace
}  // namespace carlab

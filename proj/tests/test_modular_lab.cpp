#include <gtest/gtest.h>

#include <Eigen/QR>

#include "carlab/errors.hpp"
#include "carlab/instances.hpp"
#include "carlab/modular_lab.hpp"
#include "carlab/pair_geometry.hpp"

namespace carlab {
namespace {

// Tomita kernel K with K conj(A Omega) = A^* Omega, by least squares on the
// transposed system.
ComplexMatrix oracle_tomita_kernel(const OperatorAlgebra& m, const ComplexVector& omega) {
  const Index n = omega.size();
  ComplexMatrix x(n, m.dim()), y(n, m.dim());
  for (Index k = 0; k < m.dim(); ++k) {
    const ComplexMatrix a = m.element(k);
    x.col(k) = a * omega;
    y.col(k) = a.adjoint() * omega;
  }
  const ComplexMatrix lhs = x.conjugate().transpose();
  const ComplexMatrix rhs = y.transpose();
  return lhs.completeOrthogonalDecomposition().solve(rhs).transpose();
}

TEST(Modular, E1HasTrivialModularOperator) {
  const Instance e1 = instance_e1();
  const FockSpace fock(e1.p);
  const ModularData md = tomita_S(e1.p, e1.q, fock);
  EXPECT_LT((md.delta - ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((md.j.kernel() - md.s.kernel()).norm(), 1e-12);
  EXPECT_FALSE(md.ill_conditioned);
  EXPECT_LT(check_modular_axioms(md, fock).max(), 1e-12);
}

TEST(Modular, TomitaOperatorMatchesLeastSquares) {
  for (std::uint64_t seed : {3u, 11u, 20240611u}) {
    const Instance inst = random_generic_instance(4, seed);
    const FockSpace fock(inst.p);
    const ModularData md = tomita_S(inst.p, inst.q, fock);
    EXPECT_LT((md.s.kernel() - oracle_tomita_kernel(md.m, fock.vacuum())).norm(), 1e-9) << seed;
  }
}

class ModularSeeds : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ModularSeeds, AxiomsRestrictionsAndConjugation) {
  const Instance inst = random_generic_instance(4, GetParam());
  const FockSpace fock(inst.p);
  const CyclicSeparating cs = cyclic_separating(inst.p, inst.q, fock);
  EXPECT_TRUE(cs.cyclic && cs.separating && cs.consistent());
  const ModularData md = tomita_S(inst.p, inst.q, fock);
  EXPECT_LT(check_modular_axioms(md, fock).max(), 1e-8);
  const RestrictionReport r = check_particle_restrictions(md, fock, inst.p, inst.q);
  EXPECT_LT(r.max(), 1e-8);
  const ConjugationReport c =
      check_conjugation_identity(md, build_v(inst.p, inst.q), fock, inst.q);
  EXPECT_LT(c.max(), 1e-7);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ModularSeeds, ::testing::Range<std::uint64_t>(1, 6));

TEST(Modular, SixDimensionalInstance) {
  const Instance inst = random_generic_instance(6, 17);
  const FockSpace fock(inst.p);
  const ModularData md = tomita_S(inst.p, inst.q, fock);
  EXPECT_LT(check_modular_axioms(md, fock).max(), 1e-8);
  EXPECT_LT(check_particle_restrictions(md, fock, inst.p, inst.q).max(), 1e-8);
  EXPECT_EQ(md.delta_blocks.size(), 4u);
}

TEST(Modular, NonGenericVacuumIsNotCyclicSeparating) {
  const Instance e3 = instance_e3();
  const FockSpace fock(e3.p);
  const CyclicSeparating cs = cyclic_separating(e3.p, e3.q, fock);
  EXPECT_TRUE(cs.consistent());
  EXPECT_FALSE(cs.cyclic && cs.separating);
  EXPECT_THROW(tomita_S(e3.p, e3.q, fock), Error);
}

TEST(RealSubspace, MatchesComplementOnRandomPairs) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = random_generic_instance(4, seed);
    const RealSubspaceReport r = real_subspace_compare(inst.p, inst.q);
    EXPECT_LT(r.max(), 1e-8) << seed;
    EXPECT_EQ(r.dim_m + r.dim_i_m_prime, 2 * r.complex_dim_p);
    EXPECT_EQ(r.dim_p_re_qperp, r.dim_i_m_prime);
  }
}

TEST(GeneralDuality, SplitsAlongHalmosBlocks) {
  const GeneralDualityReport e3 = general_duality_pipeline(instance_e3().p, instance_e3().q, "E3");
  EXPECT_TRUE(e3.verdict);
  EXPECT_EQ(e3.dim_h01, 2);
  EXPECT_EQ(e3.dim_h02, 2);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Instance m = random_mixed_instance({2, 2, 2}, seed);
    const GeneralDualityReport r = general_duality_pipeline(m.p, m.q, m.id);
    EXPECT_TRUE(r.verdict) << seed;
    EXPECT_LT(r.block_algebra, 1e-7);
    EXPECT_LT(r.block_commutant, 1e-7);
    EXPECT_TRUE(r.split.verdict && r.unsplit.verdict);
  }
}

}  // namespace
}  // namespace carlab

#include <gtest/gtest.h>

#include "carlab/car_space.hpp"
#include "carlab/errors.hpp"
#include "carlab/instances.hpp"
#include "oracles.hpp"

namespace carlab {
namespace {

TEST(CarSpace, StandardSpaceIsAnInvolution) {
  const CarSpace s = standard_space(3);
  EXPECT_EQ(s.dim(), 6);
  const ComplexMatrix sq = compose(s.gamma(), s.gamma());
  EXPECT_LT((sq - ComplexMatrix::Identity(6, 6)).norm(), 1e-14);
  const ComplexMatrix r = s.real_form_basis();
  EXPECT_LT((s.apply_gamma_columns(r) - r).norm(), 1e-12);
  EXPECT_LT((r.adjoint() * r - ComplexMatrix::Identity(6, 6)).norm(), 1e-12);
}

TEST(CarSpace, RejectsNonSymmetricKernel) {
  ComplexMatrix g = ComplexMatrix::Zero(2, 2);
  g(0, 1) = 1.0;
  g(1, 0) = -1.0;
  EXPECT_THROW(CarSpace{g}, InvalidStructure);
}

TEST(BasisProjection, ComplementIsGammaImage) {
  const CarSpace s = standard_space(2);
  const BasisProjection p = random_basis_projection(s, 3);
  const ComplexMatrix& pm = p.matrix();
  EXPECT_LT((pm + s.conjugate(pm) - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
  EXPECT_EQ(p.one_particle().dim(), 2);
  EXPECT_TRUE(subspace_equal(p.complement(),
                             Subspace::span_of(s.apply_gamma_columns(p.one_particle().frame()))));
  ComplexMatrix bad = ComplexMatrix::Zero(4, 4);
  bad(0, 0) = 1.0;
  EXPECT_THROW(BasisProjection(s, bad), InvalidStructure);
}

TEST(InvariantSubspace, RandomIsGammaInvariant) {
  const CarSpace s = standard_space(3);
  const InvariantSubspace q = random_invariant_subspace(s, 2, 5);
  EXPECT_EQ(q.dim(), 2);
  EXPECT_LT((s.conjugate(q.projection()) - q.projection()).norm(), 1e-12);
  EXPECT_EQ(q.orthocomplement().dim(), 4);
  ComplexMatrix v(2, 1);
  v << 1.0, 0.0;
  EXPECT_THROW(InvariantSubspace(standard_space(1), Subspace::from_frame(v)), InvalidStructure);
}

TEST(GenericPosition, AgreesWithPowerLimitIntersections) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_generic_instance(4, seed);
    const ComplexMatrix pm = inst.p.matrix();
    const ComplexMatrix qm = inst.q.projection();
    const ComplexMatrix qperp = ComplexMatrix::Identity(4, 4) - qm;
    const double r1 = oracle::trace_rank(oracle::intersection_by_powers(pm, qm));
    const double r2 = oracle::trace_rank(oracle::intersection_by_powers(pm, qperp));
    EXPECT_EQ(is_generic_position(inst.p, inst.q), r1 == 0 && r2 == 0) << seed;
  }
  const Instance e3 = instance_e3();
  EXPECT_FALSE(is_generic_position(e3.p, e3.q));
  const ComplexMatrix qm = e3.q.projection();
  EXPECT_EQ(oracle::trace_rank(oracle::intersection_by_powers(e3.p.matrix(), qm)), 1);
}

TEST(Instances, BuiltinShapes) {
  EXPECT_EQ(fock_dim(instance_e1()), 2);
  EXPECT_EQ(fock_dim(instance_e2()), 4);
  EXPECT_EQ(fock_dim(instance_e3()), 8);
  EXPECT_THROW(builtin_instance("E4"), InvalidStructure);
  const Instance mixed = random_mixed_instance({2, 2, 2}, 4);
  EXPECT_EQ(mixed.space.dim(), 6);
  EXPECT_EQ(mixed.q.dim(), 3);
}

}  // namespace
}  // namespace carlab

#include <gtest/gtest.h>

#include <Eigen/LU>

#include "carlab/instances.hpp"
#include "carlab/vn_alg.hpp"
#include "oracles.hpp"

namespace carlab {
namespace {

// Dimension of {X : XA = AX} for all given A, by full-pivot LU on the
// vectorized commutator system.
Index oracle_commutant_dim(const std::vector<ComplexMatrix>& ops) {
  const Index n = ops.front().rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix stacked(static_cast<Index>(ops.size()) * n * n, n * n);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    stacked.middleRows(static_cast<Index>(k) * n * n, n * n) =
        oracle::kron(id, ops[k]) - oracle::kron(ops[k].transpose(), id);
  }
  Eigen::FullPivLU<ComplexMatrix> lu(stacked);
  lu.setThreshold(1e-9);
  return n * n - lu.rank();
}

std::vector<ComplexMatrix> local_generators(const Subspace& q, const Representation& rep) {
  std::vector<ComplexMatrix> gens;
  for (Index k = 0; k < q.dim(); ++k) {
    gens.push_back(rep.pi_a(q.frame().col(k)));
    gens.push_back(gens.back().adjoint());
  }
  return gens;
}

TEST(OperatorAlgebra, FullAndScalar) {
  EXPECT_EQ(commutant(full_algebra(3)).dim(), 1);
  EXPECT_EQ(commutant(scalar_algebra(3)).dim(), 9);
  EXPECT_LT(full_algebra(3).closure_defect(), 1e-12);
  EXPECT_EQ(tensor_algebra(full_algebra(2), scalar_algebra(3)).dim(), 4);
}

TEST(OperatorAlgebra, SpanMatchesWordOracle) {
  const Instance e2 = instance_e2();
  const FockSpace fock(e2.p);
  const OperatorAlgebra m = local_algebra(e2.q.subspace(), fock);
  std::vector<ComplexMatrix> gens;
  for (Index k = 0; k < e2.q.dim(); ++k) gens.push_back(fock.pi_a(e2.q.subspace().frame().col(k)));
  EXPECT_EQ(m.dim(), oracle::word_span_dim(gens, 4));
  EXPECT_TRUE(m.contains_identity());
  EXPECT_LT(m.closure_defect(), 1e-9);
  EXPECT_EQ(commutant(m).dim(), oracle_commutant_dim(local_generators(e2.q.subspace(), fock)));
}

TEST(LocalAlgebra, WholeSpaceGivesAllOperators) {
  const Instance e2 = instance_e2();
  const FockSpace fock(e2.p);
  EXPECT_EQ(local_algebra(Subspace::whole(4), fock).dim(), 16);
  EXPECT_EQ(local_algebra(instance_e1().q.subspace(), FockSpace(instance_e1().p)).dim(), 2);
}

TEST(TwistedDuality, GenericBuiltins) {
  for (const Instance& inst : {instance_e1(), instance_e2()}) {
    const FockSpace fock(inst.p);
    const DualityReport r = check_twisted_duality(inst.q.subspace(), fock, inst.id);
    EXPECT_TRUE(r.verdict) << inst.id;
    EXPECT_EQ(r.dim_m_commutant, r.dim_twisted);
    EXPECT_LT(r.equality_defect, 1e-7);
    EXPECT_LT(r.grading_defect, 1e-7);
    EXPECT_EQ(r.dim_m_commutant, oracle_commutant_dim(local_generators(inst.q.subspace(), fock)));
    EXPECT_TRUE(check_twisted_causality(inst.q.subspace(), fock, 1e-7));
  }
}

TEST(TwistedDuality, UntwistedComplementIsNotInTheCommutant) {
  const Instance e2 = instance_e2();
  const FockSpace fock(e2.p);
  const OperatorAlgebra mc = commutant(local_algebra(e2.q.subspace(), fock));
  const OperatorAlgebra mperp = local_algebra(orthocomplement(e2.q.subspace()), fock);
  EXPECT_GT(span_excess(mc, mperp), 0.1);
}

TEST(TwistedDuality, NonGenericBuiltin) {
  const Instance e3 = instance_e3();
  const FockSpace fock(e3.p);
  const DualityReport r = check_twisted_duality(e3.q.subspace(), fock, e3.id);
  EXPECT_TRUE(r.verdict);
  EXPECT_LT(r.bicommutant_defect, 1e-7);
}

}  // namespace
}  // namespace carlab

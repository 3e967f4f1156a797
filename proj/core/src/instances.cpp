#include "carlab/instances.hpp"

#include <cmath>
#include <numbers>

namespace carlab {

namespace {

constexpr std::uint64_t kE2Seed = 20240611;

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexMatrix stack_frames(const ComplexMatrix& a, const ComplexMatrix& b) {
  return block_diag(a, b);
}

}  // namespace

Instance instance_e1() {
  CarSpace space = standard_space(1);
  BasisProjection p = standard_basis_projection(space);
  const double theta = std::numbers::pi / 3.0;
  ComplexMatrix v(2, 1);
  v << 1.0, std::exp(kI * theta);
  v /= std::sqrt(2.0);
  InvariantSubspace q(space, Subspace::from_frame(v));
  return {"E1", space, p, q};
}

Instance instance_e2() {
  Instance inst = random_generic_instance(4, kE2Seed);
  inst.id = "E2";
  return inst;
}

Instance instance_e3() {
  const Instance e1 = instance_e1();
  // Commuting block on C^4 = C^2 (+) C^2 in standard form per pair:
  // first pair has q = 0 (gives h01), second pair has q = C^2 (gives h02).
  const CarSpace pair = standard_space(1);
  const CarSpace space = direct_sum(e1.space, direct_sum(pair, pair));
  ComplexMatrix p = ComplexMatrix::Zero(6, 6);
  p.topLeftCorner(2, 2) = e1.p.matrix();
  p(2, 2) = 1.0;
  p(4, 4) = 1.0;
  ComplexMatrix q_frame = ComplexMatrix::Zero(6, 3);
  q_frame.block(0, 0, 2, 1) = e1.q.subspace().frame();
  q_frame(4, 1) = 1.0;
  q_frame(5, 2) = 1.0;
  return {"E3", space, BasisProjection(space, p),
          InvariantSubspace(space, Subspace::from_frame(q_frame))};
}

Instance builtin_instance(const std::string& name) {
  if (name == "E1") return instance_e1();
  if (name == "E2") return instance_e2();
  if (name == "E3") return instance_e3();
  throw InvalidStructure("unknown built-in instance '" + name + "'");
}

Instance random_generic_instance(Index dim_h, std::uint64_t seed) {
  if (dim_h < 2 || dim_h % 2 != 0) throw InvalidStructure("random_generic_instance: dim must be even");
  CarSpace space = standard_space(dim_h / 2);
  BasisProjection p = random_basis_projection(space, seed);
  InvariantSubspace q = random_invariant_subspace(space, dim_h / 2, seed + 1);
  return {"random-" + std::to_string(dim_h) + "-" + std::to_string(seed), space, p, q};
}

Instance random_mixed_instance(const MixedLayout& layout, std::uint64_t seed) {
  if (layout.h01 % 2 != 0 || layout.h02 % 2 != 0 || layout.h1 % 2 != 0) {
    throw InvalidStructure("random_mixed_instance: block dimensions must be even");
  }
  if (layout.h1 == 0 && layout.h01 == 0 && layout.h02 == 0) {
    throw InvalidStructure("random_mixed_instance: empty layout");
  }
  // Blocks in standard form, assembled in the order h01, h02, h1.
  ComplexMatrix gamma(0, 0);
  ComplexMatrix p(0, 0);
  ComplexMatrix q(0, 0);
  auto append = [&](const ComplexMatrix& g, const ComplexMatrix& pb, const ComplexMatrix& qb) {
    gamma = block_diag(gamma, g);
    p = block_diag(p, pb);
    q = stack_frames(q, qb);
  };
  if (layout.h01 > 0) {
    const CarSpace s = standard_space(layout.h01 / 2);
    append(s.gamma_kernel(), standard_basis_projection(s).matrix(), ComplexMatrix(layout.h01, 0));
  }
  if (layout.h02 > 0) {
    const CarSpace s = standard_space(layout.h02 / 2);
    append(s.gamma_kernel(), standard_basis_projection(s).matrix(),
           ComplexMatrix::Identity(layout.h02, layout.h02));
  }
  if (layout.h1 > 0) {
    const Instance g = random_generic_instance(layout.h1, seed * 7919 + 13);
    append(g.space.gamma_kernel(), g.p.matrix(), g.q.subspace().frame());
  }
  const CarSpace space(gamma);
  const ComplexMatrix u = random_gamma_unitary(space, seed * 104729 + 5);
  ComplexMatrix rotated_p = u * p * u.adjoint();
  rotated_p = 0.5 * (rotated_p + rotated_p.adjoint());
  const Subspace rotated_q = Subspace::from_frame(u * q);
  return {"mixed-" + std::to_string(layout.h01) + "-" + std::to_string(layout.h02) + "-" +
              std::to_string(layout.h1) + "-" + std::to_string(seed),
          space, BasisProjection(space, rotated_p), InvariantSubspace(space, rotated_q)};
}

Index fock_dim(const Instance& inst) { return Index{1} << (inst.space.dim() / 2); }

}  // namespace carlab

#include "carlab/modular_lab.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <random>

#include "carlab/pair_geometry.hpp"

namespace carlab {

namespace {

int popcount(Index mask) { return std::popcount(static_cast<std::uint64_t>(mask)); }

double offdiagonal_by_particle_number(const ComplexMatrix& m) {
  double out = 0.0;
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      if (popcount(r) != popcount(c)) out = std::max(out, std::abs(m(r, c)));
    }
  }
  return out;
}

// Restriction of a Fock operator (or antilinear kernel) to the one-particle sector,
// in ONB coordinates of p.
ComplexMatrix one_particle_block(const ComplexMatrix& m, Index d) {
  ComplexMatrix out(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index k = 0; k < d; ++k) out(i, k) = m(Index{1} << i, Index{1} << k);
  }
  return out;
}

// Antilinear map on h restricted to p, in ONB coordinates: F^* K conj(F).
ComplexMatrix coords_antilinear(const AntilinearMap& a, const ComplexMatrix& frame) {
  return frame.adjoint() * a.kernel() * frame.conjugate();
}

ComplexMatrix random_combinations(const ComplexMatrix& frame, Index count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix c(frame.cols(), count);
  for (Index j = 0; j < count; ++j) {
    for (Index i = 0; i < frame.cols(); ++i) c(i, j) = Complex(normal(rng), normal(rng));
  }
  return frame * c;
}

double wedge_reversal_defect(const AntilinearMap& s, const FockSpace& fock,
                             const ComplexMatrix& p, const AntilinearMap& gamma,
                             const ComplexMatrix& qs) {
  const Index n = qs.cols();
  const ComplexVector lhs = s.apply(fock.wedge(p * qs));
  ComplexMatrix reversed(qs.rows(), n);
  for (Index k = 0; k < n; ++k) reversed.col(k) = p * gamma.apply(qs.col(n - 1 - k));
  return (lhs - fock.wedge(reversed)).norm();
}

std::vector<ComplexMatrix> vacuum_images(const OperatorAlgebra& m, const ComplexVector& omega,
                                         bool adjoint) {
  std::vector<ComplexMatrix> out;
  for (Index k = 0; k < m.dim(); ++k) {
    const ComplexMatrix a = m.element(k);
    out.push_back(adjoint ? ComplexMatrix(a.adjoint() * omega) : ComplexMatrix(a * omega));
  }
  return out;
}

ComplexMatrix column_stack(const std::vector<ComplexMatrix>& cols, Index rows) {
  ComplexMatrix out(rows, static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = cols[k];
  return out;
}

// Realified coordinates of vectors of p: (Re c, Im c) with c = F^* x.
RealMatrix realified_coords(const ComplexMatrix& frame, const ComplexMatrix& x) {
  return realify(ComplexMatrix(frame.adjoint() * x));
}

// Real spanning set of Re(s) = {x in s : Gamma x = x} for a Gamma-invariant s.
ComplexMatrix real_part_spanning(const Subspace& s, const AntilinearMap& gamma) {
  const ComplexMatrix& f = s.frame();
  ComplexMatrix out(f.rows(), 2 * f.cols());
  for (Index k = 0; k < f.cols(); ++k) {
    const ComplexVector x = f.col(k);
    const ComplexVector y = kI * x;
    out.col(2 * k) = 0.5 * (x + gamma.apply(x));
    out.col(2 * k + 1) = 0.5 * (y + gamma.apply(y));
  }
  return out;
}

}  // namespace

CyclicSeparating cyclic_separating(const BasisProjection& p, const InvariantSubspace& q,
                                   const FockSpace& fock) {
  CyclicSeparating r;
  const Index d = p.one_particle().dim();
  const Subspace qperp = orthocomplement(q.subspace());
  r.cyclic = image(p.matrix(), q.subspace()).dim() == d;
  r.separating = image(p.matrix(), qperp).dim() == d;
  const OperatorAlgebra m = local_algebra(q.subspace(), fock);
  const ComplexMatrix x = column_stack(vacuum_images(m, fock.vacuum(), false), fock.fock_dim());
  const Index rank = numerical_rank(x, 1e-9);
  r.cyclic_direct = rank == fock.fock_dim();
  r.separating_direct = rank == m.dim();
  return r;
}

AntilinearMap tomita_operator(const OperatorAlgebra& m, const ComplexVector& omega) {
  const Index n = omega.size();
  const ComplexMatrix x = column_stack(vacuum_images(m, omega, false), n);
  const ComplexMatrix y = column_stack(vacuum_images(m, omega, true), n);
  const Index rank = numerical_rank(x, 1e-9);
  if (rank != n || rank != m.dim()) {
    throw NotCyclicSeparating("vacuum is not cyclic and separating (rank " + std::to_string(rank) +
                              ", Fock dim " + std::to_string(n) + ", algebra dim " +
                              std::to_string(m.dim()) + ")");
  }
  // S(X c) = Y conj(c) for all c, so K conj(X) = Y.
  return AntilinearMap(y * pinv(ComplexMatrix(x.conjugate()), 1e-12));
}

ModularData tomita_S(const BasisProjection& p, const InvariantSubspace& q, const FockSpace& fock) {
  OperatorAlgebra m = local_algebra(q.subspace(), fock);
  OperatorAlgebra m_perp = local_algebra(orthocomplement(q.subspace()), fock);
  const ComplexVector omega = fock.vacuum();
  AntilinearMap s = tomita_operator(m, omega);
  AntilinearMap t = tomita_operator(m_perp, omega);
  (void)p;
  ComplexMatrix delta = compose(s.adjoint(), s);
  delta = 0.5 * (delta + delta.adjoint());
  const HermitianEigen e = eig_hermitian(delta, 1e-6);
  const double lo = e.values.size() > 0 ? e.values.minCoeff() : 1.0;
  if (lo <= 0.0) throw Singular("tomita_S: modular operator is not invertible");
  const ComplexMatrix inv_root = psd_power(delta, -0.5, 1e-14);
  AntilinearMap j = compose(s, inv_root);

  ModularData md{std::move(m), std::move(m_perp), std::move(s), delta, std::move(j),
                 std::move(t), {}, lo, lo < 1e-12};
  for (Index n = 0; n <= fock.modes(); ++n) {
    const std::vector<Index> idx = fock.particle_sector(n);
    ComplexMatrix block(static_cast<Index>(idx.size()), static_cast<Index>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) {
        block(static_cast<Index>(r), static_cast<Index>(c)) = delta(idx[r], idx[c]);
      }
    }
    md.delta_blocks.push_back(std::move(block));
  }
  return md;
}

double ModularAxioms::max() const {
  return std::max({s_polar, j_involution, j_delta_j, vacuum, definition});
}

ModularAxioms check_modular_axioms(const ModularData& md, const FockSpace& fock) {
  const Index n = fock.fock_dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexVector omega = fock.vacuum();
  const ComplexMatrix root = psd_power(md.delta, 0.5);
  const ComplexMatrix inverse = psd_power(md.delta, -1.0, 1e-14);
  ModularAxioms a;
  a.s_polar = op_norm(ComplexMatrix(compose(md.j, root).kernel() - md.s.kernel()));
  a.j_involution = op_norm(ComplexMatrix(compose(md.j, md.j) - id));
  a.j_delta_j = op_norm(ComplexMatrix(md.j.sandwich(md.delta) - inverse)) /
                std::max(1.0, op_norm(inverse));
  a.vacuum = std::max({(md.s.apply(omega) - omega).norm(), (md.j.apply(omega) - omega).norm(),
                       (md.delta * omega - omega).norm(), (root * omega - omega).norm()});
  for (Index k = 0; k < md.m.dim(); ++k) {
    const ComplexMatrix x = md.m.element(k);
    const ComplexVector lhs = md.j.apply(root * (x * omega));
    a.definition = std::max(a.definition, (lhs - x.adjoint() * omega).norm());
  }
  return a;
}

double RestrictionReport::max() const {
  return std::max({block_offdiagonal, s_wedge_reversal, s_wedge_n2, s_wedge_n3, s_on_p_beta,
                   s_adjoint_on_p_alpha, delta_on_p, delta_second_quantized, j_wedge_reversal,
                   j_on_pq, s_on_pq, t_on_pqperp, t_minus_s_adjoint, graph_formula,
                   agreement_chain});
}

RestrictionReport check_particle_restrictions(const ModularData& md, const FockSpace& fock,
                                              const BasisProjection& p,
                                              const InvariantSubspace& q, std::uint64_t seed) {
  const PairFrames f = pair_frames(p, q);
  const Index d = fock.modes();
  const ComplexMatrix& fp = fock.frame();
  const AntilinearMap& gamma = f.gamma;
  RestrictionReport r;

  r.block_offdiagonal = std::max({offdiagonal_by_particle_number(md.s.kernel()),
                                  offdiagonal_by_particle_number(md.delta),
                                  offdiagonal_by_particle_number(md.j.kernel())});

  const AlphaBeta ab = build_alpha_beta(p, q);
  const AntilinearMap beta = ab.beta.antilinear();
  const AntilinearMap alpha = ab.alpha.antilinear();
  const AntilinearMap beta_c(coords_antilinear(beta, fp));
  const AntilinearMap alpha_c(coords_antilinear(alpha, fp));
  const ComplexMatrix dp = delta_p(p, q);
  const ComplexMatrix dp_c = fp.adjoint() * dp * fp;

  r.s_on_p_beta = op_norm(ComplexMatrix(one_particle_block(md.s.kernel(), d) - beta_c.kernel()));
  r.s_adjoint_on_p_alpha = op_norm(
      ComplexMatrix(one_particle_block(md.s.adjoint().kernel(), d) - alpha_c.kernel()));
  r.s_wedge_reversal =
      op_norm(ComplexMatrix(md.s.kernel() - reversed_second_quantization(beta_c).kernel()));

  const ComplexMatrix q2 = random_combinations(f.q, 2, seed);
  const ComplexMatrix q3 = random_combinations(f.q, 3, seed + 1);
  r.s_wedge_n2 = wedge_reversal_defect(md.s, fock, f.P, gamma, q2);
  r.s_wedge_n3 = wedge_reversal_defect(md.s, fock, f.P, gamma, q3);

  const ComplexMatrix delta1 = one_particle_block(md.delta, d);
  r.delta_on_p = op_norm(ComplexMatrix(delta1 - dp_c));
  r.delta_second_quantized = op_norm(ComplexMatrix(md.delta - second_quantization(delta1))) /
                             std::max(1.0, op_norm(md.delta));
  const AntilinearMap j1(one_particle_block(md.j.kernel(), d));
  r.j_wedge_reversal =
      op_norm(ComplexMatrix(md.j.kernel() - reversed_second_quantization(j1).kernel()));

  const ComplexMatrix dp_root = psd_power(dp, 0.5);
  for (Index k = 0; k < f.q.cols(); ++k) {
    const ComplexVector v = f.q.col(k);
    const ComplexVector pv = f.P * v;
    const ComplexVector pgv = f.P * gamma.apply(v);
    r.j_on_pq = std::max(r.j_on_pq, (md.j.apply(fock.wedge(pv)) - fock.wedge(dp_root * pgv)).norm());
    r.s_on_pq = std::max(r.s_on_pq, (md.s.apply(fock.wedge(pv)) - fock.wedge(pgv)).norm());
  }
  const AntilinearMap s_adj = md.s.adjoint();
  for (Index k = 0; k < f.qperp.cols(); ++k) {
    const ComplexVector w = f.qperp.col(k);
    const ComplexVector pw = fock.wedge(f.P * w);
    const ComplexVector pgw = fock.wedge(f.P * gamma.apply(w));
    r.t_on_pqperp = std::max(r.t_on_pqperp, (md.t.apply(pw) - pgw).norm());
    r.t_minus_s_adjoint =
        std::max(r.t_minus_s_adjoint, (md.t.apply(pw) + s_adj.apply(pw)).norm());
  }

  for (Index i = 0; i < d; ++i) {
    const ComplexVector pi = fp.col(i);
    const ComplexVector lhs = md.delta * fock.wedge(f.P * f.Q * pi);
    r.graph_formula = std::max(r.graph_formula, (lhs - fock.wedge(f.P * f.Qperp * pi)).norm());
  }

  const ComplexMatrix beta_beta = compose(beta.adjoint(), beta);
  const PolarPhi polar = polar_phi(p, q);
  const ComplexMatrix w = build_w(p, q);
  const ComplexMatrix chain = w * polar.abs_phi_svd * polar.abs_phi_svd * w.adjoint();
  r.agreement_chain = std::max({op_norm(ComplexMatrix(fp.adjoint() * beta_beta * fp - delta1)),
                                op_norm(ComplexMatrix(beta_beta - dp)),
                                op_norm(ComplexMatrix(chain - dp))});
  return r;
}

double ConjugationReport::max() const {
  return std::max({jaz_defect, v_isometry, v_range, jmj_vs_twisted, jmj_vs_commutant});
}

ConjugationReport check_conjugation_identity(const ModularData& md, const AntilinearMap& v,
                                             const FockSpace& fock, const InvariantSubspace& q) {
  const ParityOps ops = parity_ops(fock);
  const ComplexMatrix qproj = q.projection();
  ConjugationReport r;
  r.v_isometry = op_norm(ComplexMatrix(compose(v.adjoint(), v) - qproj));
  const ComplexMatrix& frame = q.subspace().frame();
  for (Index k = 0; k < frame.cols(); ++k) {
    const ComplexVector x = frame.col(k);
    const ComplexVector vx = v.apply(x);
    r.v_range = std::max(r.v_range, (qproj * vx).norm());
    const ComplexMatrix lhs = md.j.sandwich(fock.pi_a(x));
    const ComplexMatrix rhs = ops.z_tilde * fock.pi_a(vx) * ops.z_tilde.adjoint();
    r.jaz_defect = std::max(r.jaz_defect, op_norm(ComplexMatrix(lhs - rhs)));
  }
  const Index n = fock.fock_dim();
  ComplexMatrix jmj(n * n, md.m.dim());
  for (Index k = 0; k < md.m.dim(); ++k) {
    const ComplexMatrix x = md.j.sandwich(md.m.element(k));
    jmj.col(k) = Eigen::Map<const ComplexVector>(x.data(), x.size());
  }
  const OperatorAlgebra conj_alg(n, range_basis(jmj, 1e-9), {});
  r.jmj_vs_twisted = span_distance(conj_alg, twisted_algebra(md.m_perp, ops.z_tilde));
  r.jmj_vs_commutant = span_distance(conj_alg, commutant(md.m));
  return r;
}

RealSubspaceReport real_subspace_compare(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  const ComplexMatrix& fp = f.p;
  const Index d = fp.cols();
  RealSubspaceReport r;
  r.complex_dim_p = d;

  const Subspace qperp = orthocomplement(q.subspace());
  const RealMatrix m_real =
      range_basis(realified_coords(fp, f.P * real_part_spanning(q.subspace(), f.gamma)));
  const RealMatrix p_re_qperp =
      range_basis(realified_coords(fp, f.P * real_part_spanning(qperp, f.gamma)));
  r.dim_m = m_real.cols();
  r.dim_p_re_qperp = p_re_qperp.cols();

  // Re<x, m> = x_re . m_re + x_im . m_im: the Re form is the Euclidean product.
  const RealMatrix i_m_prime = nullspace(RealMatrix(m_real.transpose()));
  r.dim_i_m_prime = i_m_prime.cols();

  // Im<x, m> = x_re . m_im - x_im . m_re, then multiply by i.
  RealMatrix im_rows(m_real.cols(), 2 * d);
  im_rows.leftCols(d) = m_real.bottomRows(d).transpose();
  im_rows.rightCols(d) = -m_real.topRows(d).transpose();
  const RealMatrix m_prime = nullspace(im_rows);
  RealMatrix times_i(2 * d, m_prime.cols());
  times_i.topRows(d) = -m_prime.bottomRows(d);
  times_i.bottomRows(d) = m_prime.topRows(d);
  r.symplectic = i_m_prime.cols() == times_i.cols() ? frame_distance(i_m_prime, times_i) : 1.0;

  r.inclusion = frame_excess(i_m_prime, p_re_qperp);
  r.distance =
      i_m_prime.cols() == p_re_qperp.cols() ? frame_distance(i_m_prime, p_re_qperp) : 1.0;
  r.m_frame = fp * complexify(m_real);
  r.i_m_prime_frame = fp * complexify(i_m_prime);
  return r;
}

GeneralDualityReport general_duality_pipeline(const BasisProjection& p, const InvariantSubspace& q,
                                              const std::string& instance_id, double tol) {
  GeneralDualityReport r;
  const HalmosDecomposition h = halmos(p, q);
  r.halmos_defect = check_halmos(h, p, q).max();
  const BlockRestriction b01 = restrict_to_block(p, q, h.h01);
  const BlockRestriction b02 = restrict_to_block(p, q, h.h02);
  const BlockRestriction b1 = restrict_to_block(p, q, h.h1);
  r.dim_h01 = b01.frame.cols();
  r.dim_h02 = b02.frame.cols();
  r.dim_h1 = b1.frame.cols();
  const ComplexMatrix qproj = q.projection();
  r.q_on_h01 = op_norm(ComplexMatrix(qproj * b01.frame));
  r.q_on_h02 = op_norm(ComplexMatrix(b02.frame - qproj * b02.frame));

  auto f01 = std::make_shared<const FockSpace>(b01.p);
  auto f02 = std::make_shared<const FockSpace>(b02.p);
  auto f1 = std::make_shared<const FockSpace>(b1.p);
  auto inner = std::make_shared<const TensorRepresentation>(f02, f1, TensorVariant::kA);
  const TensorRepresentation rep(f01, inner, TensorVariant::kB);

  const Index n = p.space().dim();
  ComplexMatrix frames(n, n);
  frames << b01.frame, b02.frame, b1.frame;
  const Subspace q_split = Subspace::from_frame(frames.adjoint() * q.subspace().frame(), 1e-8);

  const OperatorAlgebra m = local_algebra(q_split, rep);
  const OperatorAlgebra m1 = local_algebra(b1.q.subspace(), *f1);
  const OperatorAlgebra expected_m = tensor_algebra(
      scalar_algebra(f01->fock_dim()), tensor_algebra(full_algebra(f02->fock_dim()), m1));
  const OperatorAlgebra expected_mc = tensor_algebra(
      full_algebra(f01->fock_dim()),
      tensor_algebra(scalar_algebra(f02->fock_dim()), commutant(m1)));
  r.block_algebra = span_distance(m, expected_m);
  r.block_commutant = span_distance(commutant(m), expected_mc);

  r.split = check_twisted_duality(q_split, rep, instance_id, tol);
  const FockSpace fock(p);
  r.unsplit = check_twisted_duality(q.subspace(), fock, instance_id, tol);
  r.verdict = r.split.verdict && r.unsplit.verdict &&
              std::max({r.halmos_defect, r.q_on_h01, r.q_on_h02, r.block_algebra,
                        r.block_commutant}) <= tol;
  return r;
}

}  // namespace carlab

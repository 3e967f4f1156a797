#include "carlab/pair_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carlab {

namespace {

ComplexMatrix hermitize(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return op_norm(ComplexMatrix(a * b - b * a));
}

ComplexMatrix joined(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

HalmosDecomposition halmos(const BasisProjection& p, const InvariantSubspace& q, double rank_rel) {
  const CarSpace& space = p.space();
  const Subspace& pp = p.one_particle();
  const Subspace pperp = p.complement();
  const Subspace& qq = q.subspace();
  const Subspace qperp = orthocomplement(qq, rank_rel);

  HalmosDecomposition h;
  h.pq = subspace_intersect(pp, qq, rank_rel);
  h.pqperp = subspace_intersect(pp, qperp, rank_rel);
  h.pperpq = subspace_intersect(pperp, qq, rank_rel);
  h.pperpqperp = subspace_intersect(pperp, qperp, rank_rel);

  ComplexMatrix all = joined(joined(h.pq.frame(), h.pqperp.frame()),
                             joined(h.pperpq.frame(), h.pperpqperp.frame()));
  h.h0 = all.cols() == 0 ? Subspace::zero(space.dim()) : Subspace::span_of(all, rank_rel);
  h.h1 = orthocomplement(h.h0, rank_rel);
  h.h01 = Subspace::span_of(
      joined(h.pqperp.frame(), space.apply_gamma_columns(h.pqperp.frame())), rank_rel);
  h.h02 =
      Subspace::span_of(joined(h.pq.frame(), space.apply_gamma_columns(h.pq.frame())), rank_rel);
  if (h.h01.dim() == 0) h.h01 = Subspace::zero(space.dim());
  if (h.h02.dim() == 0) h.h02 = Subspace::zero(space.dim());
  h.r0 = h.h0.projection();
  return h;
}

double HalmosDefects::max() const {
  return std::max({orthogonal_sum, complement, r0_commutes_p, r0_commutes_q, r0_commutes_gamma,
                   split});
}

HalmosDefects check_halmos(const HalmosDecomposition& h, const BasisProjection& p,
                           const InvariantSubspace& q) {
  const CarSpace& space = p.space();
  const Index n = space.dim();
  HalmosDefects d;

  // The four intersections are mutually orthogonal and add up to h0.
  const std::array<const Subspace*, 4> parts{&h.pq, &h.pqperp, &h.pperpq, &h.pperpqperp};
  double cross = 0.0;
  Index total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    total += parts[i]->dim();
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      cross = std::max(cross, max_abs(parts[i]->frame().adjoint() * parts[j]->frame()));
    }
  }
  d.orthogonal_sum = std::max(cross, total == h.h0.dim() ? 0.0 : 1.0);

  const double perp = max_abs(h.h0.frame().adjoint() * h.h1.frame());
  d.complement = std::max(perp, h.h0.dim() + h.h1.dim() == n ? 0.0 : 1.0);

  d.r0_commutes_p = commutator_norm(h.r0, p.matrix());
  d.r0_commutes_q = commutator_norm(h.r0, q.projection());
  d.r0_commutes_gamma = max_abs(space.conjugate(h.r0) - h.r0);

  const double split_perp = max_abs(h.h01.frame().adjoint() * h.h02.frame());
  const Subspace recombined = span_sum(h.h01, h.h02);
  const double split_span = recombined.dim() == h.h0.dim() ? subspace_distance(recombined, h.h0)
                                                           : 1.0;
  // Gamma maps p cap q^perp onto p^perp cap q^perp and p cap q onto p^perp cap q.
  const Subspace gamma_pqperp =
      h.pqperp.is_zero() ? Subspace::zero(n)
                         : Subspace::span_of(space.apply_gamma_columns(h.pqperp.frame()));
  const Subspace gamma_pq = h.pq.is_zero()
                                ? Subspace::zero(n)
                                : Subspace::span_of(space.apply_gamma_columns(h.pq.frame()));
  d.split = std::max({split_perp, split_span, subspace_distance(gamma_pqperp, h.pperpqperp),
                      subspace_distance(gamma_pq, h.pperpq)});
  return d;
}

BlockRestriction restrict_to_block(const BasisProjection& p, const InvariantSubspace& q,
                                   const Subspace& block) {
  const CarSpace& space = p.space();
  const Subspace p_part = subspace_intersect(p.one_particle(), block);
  if (2 * p_part.dim() != block.dim()) {
    throw InvalidStructure("restrict_to_block: block does not reduce the basis projection");
  }
  const ComplexMatrix frame =
      joined(p_part.frame(), space.apply_gamma_columns(p_part.frame()));
  const Index k = frame.cols();
  CarSpace block_space(frame.adjoint() * space.gamma_kernel() * frame.conjugate());
  ComplexMatrix block_p = ComplexMatrix::Zero(k, k);
  block_p.topLeftCorner(k / 2, k / 2).setIdentity();
  BasisProjection bp(block_space, block_p);
  const ComplexMatrix q_block = hermitize(frame.adjoint() * q.projection() * frame);
  const Subspace q_sub = k == 0 ? Subspace::zero(0) : Subspace::span_of(q_block, 1e-8);
  InvariantSubspace bq(block_space, q_sub.dim() == 0 ? Subspace::zero(k) : q_sub);
  return {frame, block_space, bp, bq};
}

PairFrames pair_frames(const BasisProjection& p, const InvariantSubspace& q, double rank_rel) {
  if (!is_generic_position(p, q, rank_rel)) {
    throw NotGeneric("p and q are not in generic position");
  }
  const Index n = p.space().dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  PairFrames f;
  f.P = p.matrix();
  f.Pperp = id - f.P;
  f.Q = q.projection();
  f.Qperp = id - f.Q;
  f.p = p.one_particle().frame();
  f.pperp = p.complement().frame();
  f.q = q.subspace().frame();
  f.qperp = orthocomplement(q.subspace(), rank_rel).frame();
  f.gamma = p.space().gamma();
  return f;
}

double delta_norm(const ComplexMatrix& p, const ComplexMatrix& q) {
  return op_norm(ComplexMatrix(p * q));
}

double KatoReport::max_defect() const {
  double d = 0.0;
  for (double v : {norm_qp, norm_pperp_q, norm_q_pperp, norm_p_minus_q, norm_qperp_p,
                   norm_qperp_pperp}) {
    d = std::max(d, std::abs(v - delta));
  }
  return d;
}

bool KatoReport::bicontinuous(double floor) const {
  return std::all_of(restricted_min_sv.begin(), restricted_min_sv.end(),
                     [floor](double s) { return s > floor; });
}

KatoReport kato_identities(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  KatoReport r;
  r.delta = delta_norm(f.P, f.Q);
  r.norm_qp = op_norm(ComplexMatrix(f.Q * f.P));
  r.norm_pperp_q = op_norm(ComplexMatrix(f.Pperp * f.Q));
  r.norm_q_pperp = op_norm(ComplexMatrix(f.Q * f.Pperp));
  r.norm_p_minus_q = op_norm(ComplexMatrix(f.P - f.Q));
  r.norm_qperp_p = op_norm(ComplexMatrix(f.Qperp * f.P));
  r.norm_qperp_pperp = op_norm(ComplexMatrix(f.Qperp * f.Pperp));
  // The restricted maps in orthonormal coordinates of their domain and target.
  r.restricted_min_sv = {
      min_singular_value(f.q.adjoint() * f.pperp),
      min_singular_value(f.qperp.adjoint() * f.pperp),
      min_singular_value(f.q.adjoint() * f.p),
      min_singular_value(f.qperp.adjoint() * f.p),
      min_singular_value(f.p.adjoint() * f.qperp),
      min_singular_value(f.p.adjoint() * f.q),
  };
  return r;
}

ComplexMatrix GraphOperator::matrix() const {
  if (kind != Linearity::kLinear) throw InvalidStructure("GraphOperator::matrix on antilinear graph");
  return value_map * pinv(domain_frame);
}

AntilinearMap GraphOperator::antilinear() const {
  if (kind != Linearity::kAntilinear) {
    throw InvalidStructure("GraphOperator::antilinear on linear graph");
  }
  return AntilinearMap(value_map * pinv(ComplexMatrix(domain_frame.conjugate())));
}

GraphOperator make_graph(ComplexMatrix domain, ComplexMatrix values, Linearity kind) {
  if (domain.cols() != values.cols()) throw DimensionMismatch("make_graph: column counts differ");
  if (numerical_rank(domain) != domain.cols()) {
    throw RankDeficient("make_graph: domain frame is not of full column rank");
  }
  return {std::move(domain), std::move(values), kind};
}

GraphOperator build_phi(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  return make_graph(f.Q * f.p, f.Qperp * f.p, Linearity::kLinear);
}

GraphOperator build_rho(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  return make_graph(f.Q * f.pperp, -(f.Qperp * f.pperp), Linearity::kLinear);
}

GraphOperator build_lambda(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  return make_graph(f.P * f.q, -(f.Pperp * f.q), Linearity::kLinear);
}

AlphaBeta build_alpha_beta(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  GraphOperator beta =
      make_graph(f.P * f.q, f.P * f.gamma.apply_columns(f.q), Linearity::kAntilinear);
  GraphOperator alpha =
      make_graph(f.P * f.qperp, -(f.P * f.gamma.apply_columns(f.qperp)), Linearity::kAntilinear);
  return {std::move(alpha), std::move(beta)};
}

ComplexMatrix delta_p(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  const GraphOperator g =
      make_graph(f.P * f.Q * f.p, f.P * f.Qperp * f.p, Linearity::kLinear);
  return hermitize(g.matrix());
}

PolarPhi polar_phi(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  const ComplexMatrix dp = delta_p(p, q);
  const ComplexMatrix root = psd_power(dp, 0.5);
  const ComplexMatrix inv_root = psd_power(dp, -0.5);
  PolarPhi out;
  out.abs_phi = root * f.P * f.Q + f.gamma.sandwich(inv_root * f.P) * f.Q;
  out.sgn_phi = root * f.P * f.Q - f.gamma.sandwich(root * f.P) * f.Q;
  const LinearPolar svd = polar_linear(build_phi(p, q).matrix());
  out.abs_phi_svd = svd.abs;
  out.sgn_phi_svd = svd.sgn;
  return out;
}

ComplexMatrix build_w(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  const ComplexMatrix dp = delta_p(p, q);
  return psd_power(ComplexMatrix(f.P + dp), 0.5) * f.P * f.Q;
}

AntilinearMap build_v(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  const ComplexMatrix root_p = psd_power(delta_p(p, q), 0.5) * f.P;
  const ComplexMatrix& g = f.gamma.kernel();
  // i Delta^{1/2} P Gamma x has kernel i Delta^{1/2} P G;
  // -i Gamma Delta^{1/2} P x has kernel -i G conj(Delta^{1/2} P).
  const ComplexMatrix kernel = kI * root_p * g - kI * g * root_p.conjugate();
  return AntilinearMap(kernel * f.Q.conjugate());
}

AntilinearMap build_v_from_sgn(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  const ComplexMatrix sgn = polar_linear(build_phi(p, q).matrix()).sgn;
  return AntilinearMap(-kI * f.gamma.kernel() * sgn.conjugate());
}

Spectrum spectrum(const BasisProjection& p, const InvariantSubspace& q) {
  const PairFrames f = pair_frames(p, q);
  Spectrum s;
  s.delta = delta_norm(f.P, f.Q);
  const ComplexMatrix on_p = hermitize(f.p.adjoint() * delta_p(p, q) * f.p);
  const HermitianEigen e = eig_hermitian(on_p, 1e-6);
  s.eigenvalues_of_delta_p.assign(e.values.data(), e.values.data() + e.values.size());
  if (e.values.size() > 0) {
    const double lo = e.values.minCoeff();
    const double hi = e.values.maxCoeff();
    s.condition_number = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  }
  s.ill_conditioned = s.condition_number > 1e8;
  return s;
}

}  // namespace carlab

#pragma once

// Geometry of the projection pair (P, Q): P a basis projection, Q the
// orthoprojection onto a Gamma-invariant subspace q.
//
// In finite dimension every graph operator below is everywhere defined on its
// natural domain, so each one is materialized as an ambient matrix on h that
// vanishes on the orthogonal complement of its domain. Antilinear operators
// are stored by kernel, see AntilinearMap.

#include <array>
#include <utility>
#include <vector>

#include "carlab/car_space.hpp"
#include "carlab/numlin.hpp"

namespace carlab {

struct HalmosDecomposition {
  Subspace pq;          // p cap q
  Subspace pqperp;      // p cap q^perp
  Subspace pperpq;      // p^perp cap q
  Subspace pperpqperp;  // p^perp cap q^perp
  Subspace h0;
  Subspace h01;  // (p cap q^perp) + Gamma(p cap q^perp)
  Subspace h02;  // (p cap q) + Gamma(p cap q)
  Subspace h1;   // h minus h0
  ComplexMatrix r0;  // orthoprojection onto h0
};

HalmosDecomposition halmos(const BasisProjection& p, const InvariantSubspace& q,
                           double rank_rel = kDefaultTolerances.rank_rel);

/// Defects of the structural claims about a Halmos decomposition.
struct HalmosDefects {
  double orthogonal_sum = 0.0;   // h0 against the span of the four intersections
  double complement = 0.0;       // h0 + h1 = h, h0 perp h1
  double r0_commutes_p = 0.0;    // ||R0 P - P R0||
  double r0_commutes_q = 0.0;
  double r0_commutes_gamma = 0.0;
  double split = 0.0;            // h0 = h01 + h02, h01 perp h02
  double max() const;
};

HalmosDefects check_halmos(const HalmosDecomposition& h, const BasisProjection& p,
                           const InvariantSubspace& q);

/// The reference structure restricted to one Halmos block, in coordinates of an
/// orthonormal frame of the block.
struct BlockRestriction {
  ComplexMatrix frame;  // columns: ONB of the block inside h
  CarSpace space;
  BasisProjection p;
  InvariantSubspace q;
};

/// Restricts (Gamma, P, Q) to a block that reduces all three (h1, h01, h02 or h0).
/// For h01 and h02 the frame is ordered (p-part, Gamma of the p-part).
BlockRestriction restrict_to_block(const BasisProjection& p, const InvariantSubspace& q,
                                   const Subspace& block);

/// Frames used by every generic-position computation.
struct PairFrames {
  ComplexMatrix P, Pperp, Q, Qperp;  // ambient projections
  ComplexMatrix p, pperp, q, qperp;  // orthonormal frames
  AntilinearMap gamma;
};

/// Throws NotGeneric unless p and q are in generic position.
PairFrames pair_frames(const BasisProjection& p, const InvariantSubspace& q,
                       double rank_rel = kDefaultTolerances.rank_rel);

/// delta = ||PQ||.
double delta_norm(const ComplexMatrix& p, const ComplexMatrix& q);

struct KatoReport {
  double delta = 0.0;             // ||PQ||
  double norm_qp = 0.0;           // ||QP||
  double norm_pperp_q = 0.0;      // ||(1-P)Q||
  double norm_q_pperp = 0.0;      // ||Q(1-P)||
  double norm_p_minus_q = 0.0;    // ||P-Q||
  double norm_qperp_p = 0.0;      // ||(1-Q)P||
  double norm_qperp_pperp = 0.0;  // ||(1-Q)(1-P)||
  /// Smallest singular values of Q: p^perp->q, Q^perp: p^perp->q^perp,
  /// Q: p->q, Q^perp: p->q^perp, P: q^perp->p, P: q->p.
  std::array<double, 6> restricted_min_sv{};
  /// Largest deviation of the six norms from delta.
  double max_defect() const;
  /// All six restricted maps invertible.
  bool bicontinuous(double floor = 1e-10) const;
};

/// Throws NotGeneric if the pair is not in generic position.
KatoReport kato_identities(const BasisProjection& p, const InvariantSubspace& q);

enum class Linearity { kLinear, kAntilinear };

/// A map T given by a graph {(x_i, T x_i)} over the columns of a domain frame.
struct GraphOperator {
  ComplexMatrix domain_frame;  // columns x_i, full column rank
  ComplexMatrix value_map;     // columns T x_i
  Linearity kind = Linearity::kLinear;

  /// Ambient matrix of a linear graph (zero on the complement of the domain).
  ComplexMatrix matrix() const;
  /// Ambient kernel of an antilinear graph.
  AntilinearMap antilinear() const;
};

/// Builds a graph operator; throws RankDeficient if the domain frame is not injective.
GraphOperator make_graph(ComplexMatrix domain, ComplexMatrix values, Linearity kind);

/// phi: q -> q^perp with gra phi = {(Qp, Q^perp p) : p in p}.
GraphOperator build_phi(const BasisProjection& p, const InvariantSubspace& q);
/// rho: q -> q^perp with gra rho = {(Q p', -Q^perp p') : p' in p^perp}.
GraphOperator build_rho(const BasisProjection& p, const InvariantSubspace& q);
/// lambda: p -> p^perp with gra lambda = {(Pq, -P^perp q) : q in q}.
GraphOperator build_lambda(const BasisProjection& p, const InvariantSubspace& q);

struct AlphaBeta {
  GraphOperator alpha;  // P q' -> -P Gamma q', q' in q^perp
  GraphOperator beta;   // P q -> P Gamma q, q in q
};

AlphaBeta build_alpha_beta(const BasisProjection& p, const InvariantSubspace& q);

/// Delta_p as an ambient matrix supported on p; gra = {(PQp, PQ^perp p)}.
ComplexMatrix delta_p(const BasisProjection& p, const InvariantSubspace& q);

struct PolarPhi {
  ComplexMatrix abs_phi;      // closed form from Delta_p
  ComplexMatrix sgn_phi;      // closed form from Delta_p
  ComplexMatrix abs_phi_svd;  // from the SVD of the phi matrix
  ComplexMatrix sgn_phi_svd;
};

PolarPhi polar_phi(const BasisProjection& p, const InvariantSubspace& q);

/// W q = (1 + Delta_p)^{1/2} P q, an isometry of q onto p (ambient matrix).
ComplexMatrix build_w(const BasisProjection& p, const InvariantSubspace& q);

/// V q = i (Delta_p^{1/2} P Gamma q - Gamma Delta_p^{1/2} P q), antilinear q -> q^perp.
AntilinearMap build_v(const BasisProjection& p, const InvariantSubspace& q);
/// V q = -i Gamma sgn(phi) q, computed from the SVD polar part of phi.
AntilinearMap build_v_from_sgn(const BasisProjection& p, const InvariantSubspace& q);

struct Spectrum {
  double delta = 0.0;
  std::vector<double> eigenvalues_of_delta_p;  // ascending
  double condition_number = 0.0;
  /// condition number above 1e8: the pair is close to ||PQ|| = 1.
  bool ill_conditioned = false;
};

Spectrum spectrum(const BasisProjection& p, const InvariantSubspace& q);

}  // namespace carlab

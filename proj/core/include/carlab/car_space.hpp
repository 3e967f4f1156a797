#pragma once

#include <cstdint>

#include "carlab/numlin.hpp"

namespace carlab {

/// Reference space (h, Gamma): C^dim with an antiunitary involution.
///
/// Gamma is stored by its kernel G (Gamma x = G conj(x)). Validity means G is
/// unitary and symmetric, which together give Gamma^2 = 1 and antiunitarity.
class CarSpace {
 public:
  /// Validates G; throws InvalidStructure on failure.
  explicit CarSpace(ComplexMatrix gamma_kernel, double tol = kDefaultTolerances.structural);

  Index dim() const { return gamma_.rows(); }
  const AntilinearMap& gamma() const { return gamma_; }
  const ComplexMatrix& gamma_kernel() const { return gamma_.kernel(); }

  /// Gamma A Gamma for a linear A.
  ComplexMatrix conjugate(const ComplexMatrix& a) const { return gamma_.sandwich(a); }
  ComplexVector apply_gamma(const ComplexVector& x) const { return gamma_.apply(x); }
  ComplexMatrix apply_gamma_columns(const ComplexMatrix& x) const {
    return gamma_.apply_columns(x);
  }

  /// Orthonormal basis of the real form Fix(Gamma) = {x : Gamma x = x}.
  /// The columns are also a complex orthonormal basis of h.
  ComplexMatrix real_form_basis() const;

 private:
  AntilinearMap gamma_;
};

/// C^{2m} with Gamma = swap-with-conjugation, G = [[0, I], [I, 0]].
CarSpace standard_space(Index m);

/// Orthogonal direct sum of two reference spaces.
CarSpace direct_sum(const CarSpace& a, const CarSpace& b);

/// Orthoprojection P with P + Gamma P Gamma = 1.
class BasisProjection {
 public:
  BasisProjection(const CarSpace& space, ComplexMatrix p,
                  double tol = kDefaultTolerances.structural);

  const ComplexMatrix& matrix() const { return p_; }
  const CarSpace& space() const { return space_; }
  /// The one-particle space p = P h with a fixed orthonormal frame.
  const Subspace& one_particle() const { return range_; }
  /// P^perp h = Gamma p.
  Subspace complement() const;

 private:
  CarSpace space_;
  ComplexMatrix p_;
  Subspace range_;
};

/// diag(I_m, 0) on standard_space(m).
BasisProjection standard_basis_projection(const CarSpace& space);

/// Basis projection built from the real form: span of (r_{2k-1} + i r_{2k}) / sqrt(2).
BasisProjection canonical_basis_projection(const CarSpace& space);

/// Closed Gamma-invariant subspace q.
class InvariantSubspace {
 public:
  InvariantSubspace(const CarSpace& space, Subspace q, double tol = kDefaultTolerances.structural);

  const Subspace& subspace() const { return q_; }
  const CarSpace& space() const { return space_; }
  ComplexMatrix projection() const { return q_.projection(); }
  Index dim() const { return q_.dim(); }
  /// q^perp, itself Gamma-invariant.
  InvariantSubspace orthocomplement() const;

 private:
  CarSpace space_;
  Subspace q_;
};

/// Hermitian H with Gamma H Gamma = -H: Gaussian entries, then projected onto the constraint.
ComplexMatrix random_gamma_odd_hermitian(const CarSpace& space, std::uint64_t seed);
/// U = exp(iH) with H as above; U commutes with Gamma.
ComplexMatrix random_gamma_unitary(const CarSpace& space, std::uint64_t seed);

/// U P0 U* with P0 the canonical basis projection of the space.
BasisProjection random_basis_projection(const CarSpace& space, std::uint64_t seed);

/// Complex span of real_dim random real-orthonormal vectors of Fix(Gamma).
/// Throws RankDeficient after 16 degenerate draws.
InvariantSubspace random_invariant_subspace(const CarSpace& space, Index real_dim,
                                            std::uint64_t seed);

/// True iff p, p^perp, q and q^perp have pairwise trivial intersections.
/// Only p cap q and p cap q^perp are computed; the other two follow from
/// P + Gamma P Gamma = 1.
bool is_generic_position(const BasisProjection& p, const InvariantSubspace& q,
                         double rank_rel = kDefaultTolerances.rank_rel);

}  // namespace carlab

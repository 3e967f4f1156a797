#pragma once

// Finite-dimensional von Neumann algebras on C^N, carried by an orthonormal
// basis for the Hilbert-Schmidt inner product.

#include <string>
#include <vector>

#include "carlab/car_space.hpp"
#include "carlab/fock_rep.hpp"
#include "carlab/numlin.hpp"

namespace carlab {

class OperatorAlgebra {
 public:
  /// Wraps columns vec(B_k) that are orthonormal for tr(A^* B).
  OperatorAlgebra(Index n, ComplexMatrix vec_basis, std::vector<ComplexMatrix> generators);

  Index space_dim() const { return n_; }
  Index dim() const { return basis_.cols(); }
  /// N^2 x dim, column k is vec(B_k) (column-major).
  const ComplexMatrix& vec_basis() const { return basis_; }
  ComplexMatrix element(Index k) const;
  const std::vector<ComplexMatrix>& generators() const { return generators_; }

  /// Distance of x / ||x||_HS from the span.
  double distance(const ComplexMatrix& x) const;
  bool contains_identity(double tol = kDefaultTolerances.structural) const;

  /// Largest failure of adjoint and product closure over basis elements.
  double closure_defect() const;

 private:
  Index n_;
  ComplexMatrix basis_;
  std::vector<ComplexMatrix> generators_;
};

/// Smallest unital *-algebra containing the generators. Throws InternalError if
/// the span closure does not stabilize within 64 rounds.
OperatorAlgebra algebra_span(Index n, const std::vector<ComplexMatrix>& generators,
                             double rank_rel = 1e-9);

/// {X : XG = GX for all generators G and G^*}; uses the basis when the algebra
/// carries no generators.
OperatorAlgebra commutant(const OperatorAlgebra& a, double rank_rel = 1e-9);
OperatorAlgebra double_commutant(const OperatorAlgebra& a, double rank_rel = 1e-9);

/// The full matrix algebra and the scalars on C^n.
OperatorAlgebra full_algebra(Index n);
OperatorAlgebra scalar_algebra(Index n);

/// U A U^* for a unitary U.
OperatorAlgebra conjugated(const OperatorAlgebra& a, const ComplexMatrix& u);
/// span{A (x) B}: Kronecker products of two algebras.
OperatorAlgebra tensor_algebra(const OperatorAlgebra& a, const OperatorAlgebra& b);

/// max over unit X in span(b) of the distance of X from span(a).
double span_excess(const OperatorAlgebra& a, const OperatorAlgebra& b);
/// ||P_a - P_b|| on the HS space, 1 if the dimensions differ.
double span_distance(const OperatorAlgebra& a, const OperatorAlgebra& b);

/// M(q) = {pi(a(v)) : v in q}'' for a representation of h.
OperatorAlgebra local_algebra(const Subspace& q, const Representation& rep);

/// Z~ A Z~^*.
OperatorAlgebra twisted_algebra(const OperatorAlgebra& a, const ComplexMatrix& z_tilde);
/// span{Y_even + i Z Y_odd : Y in A}.
OperatorAlgebra twisted_by_grading(const OperatorAlgebra& a, const ComplexMatrix& z);

struct DualityReport {
  std::string instance_id;
  Index fock_dim = 0;
  Index dim_m = 0;
  Index dim_m_commutant = 0;
  Index dim_twisted = 0;
  double inclusion_defect = 0.0;  // Z~ M(q^perp) Z~^* inside M(q)'
  double equality_defect = 0.0;   // distance between the two spans
  double grading_defect = 0.0;    // conjugation and grading generations agree
  double bicommutant_defect = 0.0;  // M(q)'' = M(q)
  bool verdict = false;
};

/// span(Z~ M(q^perp) Z~^*) inside span(M(q)').
bool check_twisted_causality(const Subspace& q, const Representation& rep,
                             double tol = kDefaultTolerances.derived);
DualityReport check_twisted_duality(const Subspace& q, const Representation& rep,
                                    const std::string& instance_id = "",
                                    double tol = kDefaultTolerances.derived);

}  // namespace carlab

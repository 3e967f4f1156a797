#pragma once

// Tomita-Takesaki data of (M(q), Omega) computed by brute force on the Fock
// space, and the identities that tie it to the pair geometry of (P, Q).

#include <string>
#include <vector>

#include "carlab/car_space.hpp"
#include "carlab/fock_rep.hpp"
#include "carlab/numlin.hpp"
#include "carlab/vn_alg.hpp"

namespace carlab {

struct CyclicSeparating {
  bool cyclic = false;             // P q = p
  bool separating = false;         // P q^perp = p
  bool cyclic_direct = false;      // span{A Omega : A in M(q)} = F
  bool separating_direct = false;  // A Omega = 0 implies A = 0 on M(q)
  bool consistent() const { return cyclic == cyclic_direct && separating == separating_direct; }
};

CyclicSeparating cyclic_separating(const BasisProjection& p, const InvariantSubspace& q,
                                   const FockSpace& fock);

/// Closure of A Omega -> A^* Omega over a basis of m. Throws NotCyclicSeparating
/// when Omega is not cyclic and separating for m.
AntilinearMap tomita_operator(const OperatorAlgebra& m, const ComplexVector& omega);

struct ModularData {
  OperatorAlgebra m;
  OperatorAlgebra m_perp;
  AntilinearMap s;      // Tomita operator of (M(q), Omega)
  ComplexMatrix delta;  // S^* S
  AntilinearMap j;      // S Delta^{-1/2}
  AntilinearMap t;      // Tomita operator of (M(q^perp), Omega), solved independently
  std::vector<ComplexMatrix> delta_blocks;  // Delta on the n-particle sectors
  double min_delta_eigenvalue = 0.0;
  /// Smallest eigenvalue of Delta below 1e-12.
  bool ill_conditioned = false;
};

ModularData tomita_S(const BasisProjection& p, const InvariantSubspace& q, const FockSpace& fock);

struct ModularAxioms {
  double s_polar = 0.0;        // ||S - J Delta^{1/2}||
  double j_involution = 0.0;   // ||J^2 - 1||
  double j_delta_j = 0.0;      // ||J Delta J - Delta^{-1}||
  double vacuum = 0.0;         // S, J, Delta, Delta^{1/2} fix Omega
  double definition = 0.0;     // max ||J Delta^{1/2} A Omega - A^* Omega||
  double max() const;
};

ModularAxioms check_modular_axioms(const ModularData& md, const FockSpace& fock);

struct RestrictionReport {
  double block_offdiagonal = 0.0;  // S, Delta, J between different particle numbers
  double s_wedge_reversal = 0.0;   // S = reversed Lambda(beta) on every sector
  double s_wedge_n2 = 0.0;         // S(Pq_1 ^ Pq_2) = P Gamma q_2 ^ P Gamma q_1
  double s_wedge_n3 = 0.0;
  double s_on_p_beta = 0.0;        // S on p equals beta
  double s_adjoint_on_p_alpha = 0.0;
  double delta_on_p = 0.0;         // Delta on p equals Delta_p
  double delta_second_quantized = 0.0;
  double j_wedge_reversal = 0.0;
  double j_on_pq = 0.0;            // J(P q) = Delta_p^{1/2} P Gamma q
  double s_on_pq = 0.0;            // S(P q) = P Gamma q
  double t_on_pqperp = 0.0;        // T(P q') = P Gamma q'
  double t_minus_s_adjoint = 0.0;  // T(P q') = -S^*(P q')
  double graph_formula = 0.0;      // Delta(P Q p_i) = P Q^perp p_i
  double agreement_chain = 0.0;    // Delta on p, Delta_p, beta^* beta, W |phi|^2 W^*
  double max() const;
};

/// Requires generic position; seed drives the random q vectors for the wedge checks.
RestrictionReport check_particle_restrictions(const ModularData& md, const FockSpace& fock,
                                              const BasisProjection& p,
                                              const InvariantSubspace& q,
                                              std::uint64_t seed = 7);

struct ConjugationReport {
  double jaz_defect = 0.0;      // max ||J a(v) J - Z~ a(Vv) Z~^*|| over an ONB of q
  double v_isometry = 0.0;      // ||V^* V - Q||
  double v_range = 0.0;         // max ||Q V v||
  double jmj_vs_twisted = 0.0;  // span(J M(q) J) against Z~ M(q^perp) Z~^*
  double jmj_vs_commutant = 0.0;
  double max() const;
};

ConjugationReport check_conjugation_identity(const ModularData& md, const AntilinearMap& v,
                                             const FockSpace& fock, const InvariantSubspace& q);

struct RealSubspaceReport {
  Index complex_dim_p = 0;
  Index dim_m = 0;           // real dimension of M = P(Re q)
  Index dim_i_m_prime = 0;   // real dimension of i M'
  Index dim_p_re_qperp = 0;  // real dimension of P(Re q^perp)
  double inclusion = 0.0;    // P(Re q^perp) inside i M'
  double distance = 0.0;     // real-subspace distance of the two
  double symplectic = 0.0;   // i M' from the Re form against i times M' from the Im form
  /// Real-orthonormal frames in h, expressed as complex vectors.
  ComplexMatrix m_frame;
  ComplexMatrix i_m_prime_frame;
  double max() const { return std::max({inclusion, distance, symplectic}); }
};

/// Throws NotGeneric unless p and q are in generic position.
RealSubspaceReport real_subspace_compare(const BasisProjection& p, const InvariantSubspace& q);

struct GeneralDualityReport {
  Index dim_h01 = 0;
  Index dim_h02 = 0;
  Index dim_h1 = 0;
  double halmos_defect = 0.0;
  double q_on_h01 = 0.0;       // ||Q R01||
  double q_on_h02 = 0.0;       // ||(1 - Q) R02||
  double block_algebra = 0.0;  // M(q) against C1 (x) L(F02) (x) M(Q h1)
  double block_commutant = 0.0;  // M(q)' against L(F01) (x) C1 (x) M(Q h1)'
  DualityReport split;
  DualityReport unsplit;
  bool verdict = false;
};

GeneralDualityReport general_duality_pipeline(const BasisProjection& p, const InvariantSubspace& q,
                                              const std::string& instance_id = "",
                                              double tol = kDefaultTolerances.derived);

}  // namespace carlab

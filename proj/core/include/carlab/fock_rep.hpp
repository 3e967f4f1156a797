#pragma once

// Antisymmetric Fock space over p = P h and the Fock representation of the
// self-dual CAR algebra.
//
// Basis: e_S for S a subset of {0..d-1} encoded as a bitmask, with
// e_S = p_{i_1} ^ ... ^ p_{i_k} for i_1 < ... < i_k. Operators are dense
// matrices in this basis.

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/SparseCore>

#include "carlab/car_space.hpp"
#include "carlab/numlin.hpp"

namespace carlab {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Largest supported Fock dimension.
inline constexpr Index kFockCap = Index{1} << 12;

/// Something that represents a(f), f in h, on a finite-dimensional space with
/// a distinguished vacuum and parity.
class Representation {
 public:
  virtual ~Representation() = default;
  /// dim h
  virtual Index one_particle_dim() const = 0;
  virtual Index fock_dim() const = 0;
  /// pi(a(f)), antilinear in f.
  virtual ComplexMatrix pi_a(const ComplexVector& f) const = 0;
  virtual ComplexMatrix parity() const = 0;
  virtual ComplexVector vacuum() const = 0;
};

class FockSpace final : public Representation {
 public:
  /// Fock space over the one-particle space of p, in the ONB
  /// p.one_particle().frame(). Throws FockCapExceeded above kFockCap.
  explicit FockSpace(const BasisProjection& p);

  Index modes() const { return d_; }
  Index one_particle_dim() const override { return h_dim_; }
  Index fock_dim() const override { return Index{1} << d_; }
  const ComplexMatrix& frame() const { return frame_; }
  const ComplexMatrix& projection() const { return p_; }
  const AntilinearMap& gamma() const { return gamma_; }

  /// c_i^* for the i-th ONB vector of p.
  const SparseMatrix& creation_basis(Index i) const { return creation_[static_cast<std::size_t>(i)]; }

  /// c(v)^* for v in h (projected onto p first).
  ComplexMatrix creation(const ComplexVector& v) const;
  /// c(v), antilinear in v.
  ComplexMatrix annihilation(const ComplexVector& v) const;
  /// pi(a(f)) = c(P Gamma f)^* + c(P f).
  ComplexMatrix pi_a(const ComplexVector& f) const override;
  ComplexMatrix parity() const override;
  ComplexVector vacuum() const override;

  /// Coordinates of v in the ONB of p.
  ComplexVector coordinates(const ComplexVector& v) const { return frame_.adjoint() * v; }
  /// Norm of the component of v outside p.
  double off_p_norm(const ComplexVector& v) const;

  /// Fock vector of v_1 ^ ... ^ v_k for vectors given as columns in h.
  ComplexVector wedge(const ComplexMatrix& vectors) const;
  /// Same, with columns given in ONB coordinates of p.
  ComplexVector wedge_coordinates(const ComplexMatrix& coords) const;

  /// Indices of the basis vectors with exactly n particles, ascending.
  std::vector<Index> particle_sector(Index n) const;

 private:
  Index d_ = 0;
  Index h_dim_ = 0;
  ComplexMatrix frame_;
  ComplexMatrix p_;
  AntilinearMap gamma_;
  std::vector<SparseMatrix> creation_;
};

struct ParityOps {
  ComplexMatrix z;
  ComplexMatrix e_plus;
  ComplexMatrix e_minus;
  ComplexMatrix z_tilde;  // (1 + iZ) / (1 + i) = E+ - i E-
};

ParityOps parity_ops(const Representation& rep);
ParityOps parity_ops(const ComplexMatrix& z);

struct ParityParts {
  ComplexMatrix even;
  ComplexMatrix odd;
  /// max of ||E+ even E-||, ||E- even E+||, ||E+ odd E+||, ||E- odd E-||
  double block_defect = 0.0;
};

ParityParts parity_blocks(const ComplexMatrix& x, const ComplexMatrix& z);

/// An element of the index set for the vacuum expansion of a(f_n)...a(f_1) Omega:
/// p pairs (alpha_l > beta_l, alpha_1 > ... > alpha_p) and descending survivors.
/// Indices are 1-based as in the expansion.
struct PairingTerm {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> survivors;
  int sign = 1;
};

std::vector<PairingTerm> enumerate_pairings(int n, int p);
/// C(n, 2p) (2p)! / (p! 2^p)
std::uint64_t pairing_count(int n, int p);

/// a(f_n) ... a(f_1) Omega through the signed pairing expansion; f_list = (f_1..f_n).
ComplexVector vacuum_expansion(const std::vector<ComplexVector>& f_list, const FockSpace& fock);

/// Lambda(A): the map p_1 ^ ... ^ p_n -> A p_1 ^ ... ^ A p_n for A given in ONB
/// coordinates of p (d x d).
ComplexMatrix second_quantization(const ComplexMatrix& a);
/// Kernel of the antilinear map p_1 ^ ... ^ p_n -> K p_n ^ ... ^ K p_1, for an
/// antilinear K on p given by its kernel in ONB coordinates.
AntilinearMap reversed_second_quantization(const AntilinearMap& k);

enum class TensorVariant {
  kA,  // pi_0 (x) 1 + Z_0 (x) pi_1
  kB,  // pi_0 (x) Z_1 + 1 (x) pi_1
};

/// Representation of h_0 (+) h_1 on F_0 (x) F_1 (Kronecker ordering).
class TensorRepresentation final : public Representation {
 public:
  TensorRepresentation(std::shared_ptr<const Representation> r0,
                       std::shared_ptr<const Representation> r1, TensorVariant variant);

  Index one_particle_dim() const override;
  Index fock_dim() const override;
  ComplexMatrix pi_a(const ComplexVector& f) const override;
  ComplexMatrix parity() const override;
  ComplexVector vacuum() const override;

  const Representation& first() const { return *r0_; }
  const Representation& second() const { return *r1_; }

 private:
  std::shared_ptr<const Representation> r0_;
  std::shared_ptr<const Representation> r1_;
  TensorVariant variant_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct CarResiduals {
  double anticommutator = 0.0;  // max ||{a(f), a(h)^*} - <f,h> 1||
  double adjoint = 0.0;         // max ||a(f)^* - a(Gamma f)||
  double vacuum = 0.0;          // max |<Omega, a(f)^* a(f) Omega> - ||(1-P) f||^2|
  double antilinearity = 0.0;   // max ||a(c f) - conj(c) a(f)||, c = (0.6, 0.8)
  double max() const;
};

/// CAR relations and the Fock vacuum condition for all pairs of the given vectors.
/// gamma and p act on the one-particle space of rep.
CarResiduals car_residuals(const Representation& rep, const AntilinearMap& gamma,
                           const ComplexMatrix& p, const std::vector<ComplexVector>& vectors);

}  // namespace carlab

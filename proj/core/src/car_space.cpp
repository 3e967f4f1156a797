#include "carlab/car_space.hpp"

#include <cmath>
#include <random>
#include <string>

namespace carlab {

namespace {

ComplexMatrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

bool is_standard_kernel(const ComplexMatrix& g) {
  const Index n = g.rows();
  if (n % 2 != 0) return false;
  const Index m = n / 2;
  ComplexMatrix expected = ComplexMatrix::Zero(n, n);
  expected.topRightCorner(m, m).setIdentity();
  expected.bottomLeftCorner(m, m).setIdentity();
  return max_abs(g - expected) == 0.0;
}

}  // namespace

CarSpace::CarSpace(ComplexMatrix gamma_kernel, double tol) : gamma_(std::move(gamma_kernel)) {
  const ComplexMatrix& g = gamma_.kernel();
  if (g.rows() != g.cols()) throw InvalidStructure("CarSpace: Gamma kernel is not square");
  if (g.rows() == 0) return;
  if (g.rows() % 2 != 0) {
    throw InvalidStructure("CarSpace: dimension " + std::to_string(g.rows()) +
                           " is odd; no basis projection can exist");
  }
  const Index n = g.rows();
  const double unitarity = max_abs(g.adjoint() * g - ComplexMatrix::Identity(n, n));
  const double symmetry = max_abs(g - g.transpose());
  if (unitarity > tol || symmetry > tol) {
    throw InvalidStructure("CarSpace: Gamma kernel must be symmetric unitary (unitarity defect " +
                           std::to_string(unitarity) + ", symmetry defect " +
                           std::to_string(symmetry) + ")");
  }
}

ComplexMatrix CarSpace::real_form_basis() const {
  const Index n = dim();
  if (n == 0) return ComplexMatrix(0, 0);
  // Gamma x = x with x = a + ib and G = Gr + i Gi:
  //   Gr a + Gi b = a,  Gi a - Gr b = b.
  const RealMatrix gr = gamma_kernel().real();
  const RealMatrix gi = gamma_kernel().imag();
  RealMatrix system(2 * n, 2 * n);
  system.topLeftCorner(n, n) = gr - RealMatrix::Identity(n, n);
  system.topRightCorner(n, n) = gi;
  system.bottomLeftCorner(n, n) = gi;
  system.bottomRightCorner(n, n) = -gr - RealMatrix::Identity(n, n);
  const RealMatrix fixed = nullspace(system);
  if (fixed.cols() != n) {
    throw InternalError("CarSpace: real form has real dimension " + std::to_string(fixed.cols()) +
                        ", expected " + std::to_string(n));
  }
  return complexify(fixed);
}

CarSpace standard_space(Index m) {
  if (m < 1) throw InvalidStructure("standard_space: m must be positive");
  ComplexMatrix g = ComplexMatrix::Zero(2 * m, 2 * m);
  g.topRightCorner(m, m).setIdentity();
  g.bottomLeftCorner(m, m).setIdentity();
  return CarSpace(std::move(g));
}

CarSpace direct_sum(const CarSpace& a, const CarSpace& b) {
  const Index n = a.dim() + b.dim();
  ComplexMatrix g = ComplexMatrix::Zero(n, n);
  g.topLeftCorner(a.dim(), a.dim()) = a.gamma_kernel();
  g.bottomRightCorner(b.dim(), b.dim()) = b.gamma_kernel();
  return CarSpace(std::move(g));
}

BasisProjection::BasisProjection(const CarSpace& space, ComplexMatrix p, double tol)
    : space_(space), p_(std::move(p)) {
  const Index n = space_.dim();
  if (p_.rows() != n || p_.cols() != n) throw DimensionMismatch("BasisProjection: size mismatch");
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double herm = max_abs(p_ - p_.adjoint());
  const double idem = max_abs(p_ * p_ - p_);
  const double basis = max_abs(p_ + space_.conjugate(p_) - id);
  if (herm > tol || idem > tol || basis > tol) {
    throw InvalidStructure("BasisProjection: P = P* = P^2 and P + Gamma P Gamma = 1 violated "
                           "(defects " + std::to_string(herm) + ", " + std::to_string(idem) +
                           ", " + std::to_string(basis) + ")");
  }
  if (n == 0) {
    range_ = Subspace::zero(0);
    return;
  }
  const HermitianEigen e = eig_hermitian(p_, tol);
  // Eigenvalues are ascending; the top half spans P h.
  range_ = Subspace::from_frame(e.vectors.rightCols(n / 2));
}

Subspace BasisProjection::complement() const {
  return Subspace::from_frame(space_.apply_gamma_columns(range_.frame()));
}

BasisProjection standard_basis_projection(const CarSpace& space) {
  const Index n = space.dim();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  p.topLeftCorner(n / 2, n / 2).setIdentity();
  return BasisProjection(space, std::move(p));
}

BasisProjection canonical_basis_projection(const CarSpace& space) {
  if (is_standard_kernel(space.gamma_kernel())) return standard_basis_projection(space);
  const ComplexMatrix r = space.real_form_basis();
  const Index m = space.dim() / 2;
  ComplexMatrix frame(space.dim(), m);
  for (Index k = 0; k < m; ++k) {
    frame.col(k) = (r.col(2 * k) + kI * r.col(2 * k + 1)) / std::sqrt(2.0);
  }
  return BasisProjection(space, frame * frame.adjoint());
}

InvariantSubspace::InvariantSubspace(const CarSpace& space, Subspace q, double tol)
    : space_(space), q_(std::move(q)) {
  if (q_.ambient_dim() != space_.dim()) throw DimensionMismatch("InvariantSubspace: ambient size");
  const ComplexMatrix proj = q_.projection();
  const double defect = max_abs(space_.conjugate(proj) - proj);
  if (defect > tol) {
    throw InvalidStructure("InvariantSubspace: Gamma Q Gamma != Q (defect " +
                           std::to_string(defect) + ")");
  }
}

InvariantSubspace InvariantSubspace::orthocomplement() const {
  return InvariantSubspace(space_, carlab::orthocomplement(q_));
}

ComplexMatrix random_gamma_odd_hermitian(const CarSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexMatrix h = gaussian_matrix(space.dim(), space.dim(), rng);
  h = 0.5 * (h - space.conjugate(h));
  return 0.5 * (h + h.adjoint());
}

ComplexMatrix random_gamma_unitary(const CarSpace& space, std::uint64_t seed) {
  const ComplexMatrix h = random_gamma_odd_hermitian(space, seed);
  const HermitianEigen e = eig_hermitian(h);
  ComplexVector phases(e.values.size());
  for (Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(kI * e.values(i));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

BasisProjection random_basis_projection(const CarSpace& space, std::uint64_t seed) {
  const BasisProjection base = canonical_basis_projection(space);
  const ComplexMatrix u = random_gamma_unitary(space, seed);
  ComplexMatrix p = u * base.matrix() * u.adjoint();
  p = 0.5 * (p + p.adjoint());
  return BasisProjection(space, std::move(p));
}

InvariantSubspace random_invariant_subspace(const CarSpace& space, Index real_dim,
                                            std::uint64_t seed) {
  if (real_dim < 0 || real_dim > space.dim()) {
    throw DimensionMismatch("random_invariant_subspace: real_dim out of range");
  }
  if (real_dim == 0) return InvariantSubspace(space, Subspace::zero(space.dim()));
  constexpr int kAttempts = 16;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const ComplexMatrix x = gaussian_matrix(space.dim(), real_dim, rng);
    const ComplexMatrix fixed = x + space.apply_gamma_columns(x);
    // Inner products of Gamma-fixed vectors are real, so real and complex
    // orthonormalization agree.
    const RealMatrix real_frame = range_basis(realify(fixed), 1e-8);
    if (real_frame.cols() != real_dim) continue;
    ComplexMatrix frame = complexify(real_frame);
    return InvariantSubspace(space, Subspace::from_frame(std::move(frame)));
  }
  throw RankDeficient("random_invariant_subspace: degenerate draws");
}

bool is_generic_position(const BasisProjection& p, const InvariantSubspace& q, double rank_rel) {
  const Subspace& pp = p.one_particle();
  const Subspace qperp = orthocomplement(q.subspace(), rank_rel);
  return subspace_intersect(pp, q.subspace(), rank_rel).is_zero() &&
         subspace_intersect(pp, qperp, rank_rel).is_zero();
}

}  // namespace carlab

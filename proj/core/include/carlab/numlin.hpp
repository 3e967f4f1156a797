#pragma once

// Dense complex linear algebra used throughout carlab.
//
// Everything here is a thin layer over Eigen: a kernel-based representation
// of antilinear maps, spectral helpers for self-adjoint matrices, and a small
// calculus of subspaces carried by orthonormal column frames.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "carlab/errors.hpp"

namespace carlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerances shared by all modules.
struct Tolerances {
  /// Idempotence, self-adjointness and other structural checks.
  double structural = 1e-9;
  /// Identities that are derived through several numerical steps.
  double derived = 1e-7;
  /// Relative singular-value cutoff for rank decisions.
  double rank_rel = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Antilinear operator x -> K * conj(x), stored by its kernel K.
class AntilinearMap {
 public:
  AntilinearMap() = default;
  explicit AntilinearMap(ComplexMatrix kernel) : kernel_(std::move(kernel)) {}

  /// Plain complex conjugation on C^n.
  static AntilinearMap conjugation(Index n);

  const ComplexMatrix& kernel() const { return kernel_; }
  Index rows() const { return kernel_.rows(); }
  Index cols() const { return kernel_.cols(); }

  ComplexVector apply(const ComplexVector& x) const;
  ComplexVector operator()(const ComplexVector& x) const { return apply(x); }
  /// Column-wise application.
  ComplexMatrix apply_columns(const ComplexMatrix& x) const;

  /// The unique antilinear A* with <A*y, x> = conj(<y, Ax>); kernel K^T.
  AntilinearMap adjoint() const;

  /// this o L o this, a linear map.
  ComplexMatrix sandwich(const ComplexMatrix& linear) const;

  AntilinearMap scaled(Complex c) const { return AntilinearMap(c * kernel_); }

 private:
  ComplexMatrix kernel_;
};

/// a o b for two antilinear maps: the linear matrix K_a conj(K_b).
ComplexMatrix compose(const AntilinearMap& a, const AntilinearMap& b);
/// a o l: antilinear with kernel K_a conj(l).
AntilinearMap compose(const AntilinearMap& a, const ComplexMatrix& l);
/// l o a: antilinear with kernel l K_a.
AntilinearMap compose(const ComplexMatrix& l, const AntilinearMap& a);

AntilinearMap operator+(const AntilinearMap& a, const AntilinearMap& b);
AntilinearMap operator-(const AntilinearMap& a, const AntilinearMap& b);

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // unitary, columns are eigenvectors
};

/// Eigendecomposition of a self-adjoint matrix.
/// Throws NotHermitian if ||A - A*|| exceeds tol * max(1, ||A||).
HermitianEigen eig_hermitian(const ComplexMatrix& a, double tol = kDefaultTolerances.structural);

/// A^exponent for a positive semidefinite A. Eigenvalues are clamped at 0;
/// for negative exponents the power is taken on the support only, with the
/// support cut at rank_rel * lambda_max (a Moore-Penrose style power).
ComplexMatrix psd_power(const ComplexMatrix& a, double exponent,
                        double rank_rel = kDefaultTolerances.rank_rel);

struct AntilinearPolar {
  AntilinearMap j;
  ComplexMatrix delta;  // S* S
};

/// S = J Delta^{1/2}. Throws Singular if the kernel of S is not invertible.
AntilinearPolar polar_antilinear(const AntilinearMap& s,
                                 double rank_rel = kDefaultTolerances.rank_rel);

struct LinearPolar {
  ComplexMatrix sgn;  // partial isometry
  ComplexMatrix abs;  // (A* A)^{1/2}
};

/// Polar decomposition A = sgn(A) |A| through the SVD.
LinearPolar polar_linear(const ComplexMatrix& a, double rank_rel = kDefaultTolerances.rank_rel);

/// Largest singular value (0 for an empty matrix).
double op_norm(const ComplexMatrix& a);
double op_norm(const RealMatrix& a);
/// Smallest singular value of a square or tall matrix.
double min_singular_value(const ComplexMatrix& a);

Index numerical_rank(const ComplexMatrix& a, double rank_rel = kDefaultTolerances.rank_rel);

/// Orthonormal basis of the null space of A (columns).
ComplexMatrix nullspace(const ComplexMatrix& a, double rank_rel = kDefaultTolerances.rank_rel);
RealMatrix nullspace(const RealMatrix& a, double rank_rel = kDefaultTolerances.rank_rel);

/// Orthonormal basis of the column span of A.
ComplexMatrix range_basis(const ComplexMatrix& a, double rank_rel = kDefaultTolerances.rank_rel);
RealMatrix range_basis(const RealMatrix& a, double rank_rel = kDefaultTolerances.rank_rel);

/// Pseudo-inverse with the same rank convention.
ComplexMatrix pinv(const ComplexMatrix& a, double rank_rel = kDefaultTolerances.rank_rel);

/// ||P_A - P_B|| for two orthonormal column frames (any field).
double frame_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double frame_distance(const RealMatrix& a, const RealMatrix& b);
/// max over unit x in span(b) of dist(x, span(a)); 0 iff span(b) is inside span(a).
double frame_excess(const ComplexMatrix& a, const ComplexMatrix& b);
double frame_excess(const RealMatrix& a, const RealMatrix& b);

/// Realification C^n -> R^{2n}: (Re x, Im x) stacked.
RealMatrix realify(const ComplexMatrix& x);
ComplexMatrix complexify(const RealMatrix& x);

/// A closed subspace of C^n carried by an orthonormal frame.
class Subspace {
 public:
  /// The zero subspace of C^0.
  Subspace() = default;

  /// Wraps an orthonormal frame; throws InvalidStructure if frame* frame != 1.
  static Subspace from_frame(ComplexMatrix frame, double tol = kDefaultTolerances.structural);
  /// Span of arbitrary columns, rank decided by the relative cutoff.
  static Subspace span_of(const ComplexMatrix& vectors,
                          double rank_rel = kDefaultTolerances.rank_rel);
  static Subspace zero(Index ambient_dim);
  static Subspace whole(Index ambient_dim);

  const ComplexMatrix& frame() const { return frame_; }
  Index dim() const { return frame_.cols(); }
  Index ambient_dim() const { return frame_.rows(); }
  bool is_zero() const { return dim() == 0; }

  /// frame * frame^*.
  ComplexMatrix projection() const;
  /// Distance from x to the subspace.
  double distance(const ComplexVector& x) const;

 private:
  explicit Subspace(ComplexMatrix frame) : frame_(std::move(frame)) {}
  ComplexMatrix frame_ = ComplexMatrix(0, 0);
};

/// A intersect B via the null space of [frame_A | -frame_B].
Subspace subspace_intersect(const Subspace& a, const Subspace& b,
                            double rank_rel = kDefaultTolerances.rank_rel);
Subspace span_sum(const Subspace& a, const Subspace& b,
                  double rank_rel = kDefaultTolerances.rank_rel);
Subspace orthocomplement(const Subspace& a, double rank_rel = kDefaultTolerances.rank_rel);
/// Image of a subspace under a linear map.
Subspace image(const ComplexMatrix& map, const Subspace& a,
               double rank_rel = kDefaultTolerances.rank_rel);
/// ||P_A - P_B||.
double subspace_distance(const Subspace& a, const Subspace& b);
bool subspace_equal(const Subspace& a, const Subspace& b, double tol = kDefaultTolerances.structural);

/// max |entry| based helpers used by checks
inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace carlab

#include "carlab/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carlab {

namespace {

// All SVDs are JacobiSVD: Eigen 3.4.0 BDCSVD returns wrong singular vectors on
// the highly degenerate commutator systems built by vn_alg.

// Singular values below this are treated as zero regardless of scale; all
// inputs in this library are O(1) operators.
constexpr double kAbsoluteRankFloor = 1e-12;

double rank_cutoff(double rank_rel, double sigma_max) {
  return std::max(rank_rel * sigma_max, kAbsoluteRankFloor);
}

template <typename Matrix>
double largest_sv(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

template <typename Matrix>
Matrix nullspace_impl(const Matrix& a, double rank_rel) {
  const Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rank_cutoff(rank_rel, sv.size() > 0 ? sv(0) : 0.0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

template <typename Matrix>
Matrix range_impl(const Matrix& a, double rank_rel) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = rank_cutoff(rank_rel, sv(0));
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

template <typename Matrix>
double excess_impl(const Matrix& a, const Matrix& b) {
  if (b.cols() == 0) return 0.0;
  if (a.cols() == 0) return 1.0;
  const Matrix residual = b - a * (a.adjoint() * b);
  return largest_sv(residual);
}

}  // namespace

AntilinearMap AntilinearMap::conjugation(Index n) {
  return AntilinearMap(ComplexMatrix::Identity(n, n));
}

ComplexVector AntilinearMap::apply(const ComplexVector& x) const {
  if (x.size() != kernel_.cols()) {
    throw DimensionMismatch("antilinear map of width " + std::to_string(kernel_.cols()) +
                            " applied to vector of size " + std::to_string(x.size()));
  }
  return kernel_ * x.conjugate();
}

ComplexMatrix AntilinearMap::apply_columns(const ComplexMatrix& x) const {
  if (x.rows() != kernel_.cols()) throw DimensionMismatch("antilinear map: column size mismatch");
  return kernel_ * x.conjugate();
}

AntilinearMap AntilinearMap::adjoint() const { return AntilinearMap(kernel_.transpose()); }

ComplexMatrix AntilinearMap::sandwich(const ComplexMatrix& linear) const {
  return kernel_ * linear.conjugate() * kernel_.conjugate();
}

ComplexMatrix compose(const AntilinearMap& a, const AntilinearMap& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("compose: inner dimensions differ");
  return a.kernel() * b.kernel().conjugate();
}

AntilinearMap compose(const AntilinearMap& a, const ComplexMatrix& l) {
  if (a.cols() != l.rows()) throw DimensionMismatch("compose: inner dimensions differ");
  return AntilinearMap(a.kernel() * l.conjugate());
}

AntilinearMap compose(const ComplexMatrix& l, const AntilinearMap& a) {
  if (l.cols() != a.rows()) throw DimensionMismatch("compose: inner dimensions differ");
  return AntilinearMap(l * a.kernel());
}

AntilinearMap operator+(const AntilinearMap& a, const AntilinearMap& b) {
  return AntilinearMap(a.kernel() + b.kernel());
}

AntilinearMap operator-(const AntilinearMap& a, const AntilinearMap& b) {
  return AntilinearMap(a.kernel() - b.kernel());
}

HermitianEigen eig_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("eig_hermitian: matrix is not square");
  if (a.size() == 0) return {RealVector(0), ComplexMatrix(0, 0)};
  const double asym = op_norm(ComplexMatrix(a - a.adjoint()));
  const double scale = std::max(1.0, op_norm(a));
  if (asym > tol * scale) {
    throw NotHermitian("eig_hermitian: ||A - A*|| = " + std::to_string(asym));
  }
  const ComplexMatrix herm = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) throw InternalError("eig_hermitian: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_power(const ComplexMatrix& a, double exponent, double rank_rel) {
  if (a.size() == 0) return a;
  // Tolerance is loose here; Delta-type inputs are assembled from products.
  const HermitianEigen e = eig_hermitian(a, 1e-6);
  const double top = std::max(0.0, e.values.maxCoeff());
  RealVector f(e.values.size());
  for (Index i = 0; i < f.size(); ++i) {
    const double lambda = std::max(0.0, e.values(i));
    if (exponent < 0.0) {
      f(i) = lambda > rank_rel * top && lambda > 0.0 ? std::pow(lambda, exponent) : 0.0;
    } else if (exponent == 0.0) {
      f(i) = lambda > rank_rel * top ? 1.0 : 0.0;
    } else {
      f(i) = std::pow(lambda, exponent);
    }
  }
  return e.vectors * f.asDiagonal() * e.vectors.adjoint();
}

AntilinearPolar polar_antilinear(const AntilinearMap& s, double rank_rel) {
  const ComplexMatrix& k = s.kernel();
  if (k.rows() != k.cols()) throw DimensionMismatch("polar_antilinear: kernel is not square");
  if (k.size() > 0) {
    const double smin = min_singular_value(k);
    const double smax = op_norm(k);
    if (smin <= rank_rel * smax || smax == 0.0) {
      throw Singular("polar_antilinear: kernel is singular (sigma_min = " +
                     std::to_string(smin) + ")");
    }
  }
  ComplexMatrix delta = compose(s.adjoint(), s);
  delta = 0.5 * (delta + delta.adjoint());
  const ComplexMatrix inv_root = psd_power(delta, -0.5, 0.0);
  return {compose(s, inv_root), delta};
}

LinearPolar polar_linear(const ComplexMatrix& a, double rank_rel) {
  if (a.size() == 0) return {a, ComplexMatrix::Zero(a.cols(), a.cols())};
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double cutoff = rank_cutoff(rank_rel, sv(0));
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  const ComplexMatrix u = svd.matrixU().leftCols(rank);
  const ComplexMatrix v = svd.matrixV().leftCols(rank);
  const ComplexMatrix sigma = sv.head(rank).cast<Complex>().asDiagonal();
  return {u * v.adjoint(), v * sigma * v.adjoint()};
}

double op_norm(const ComplexMatrix& a) { return largest_sv(a); }
double op_norm(const RealMatrix& a) { return largest_sv(a); }

double min_singular_value(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().minCoeff();
}

Index numerical_rank(const ComplexMatrix& a, double rank_rel) {
  return range_impl(a, rank_rel).cols();
}

ComplexMatrix nullspace(const ComplexMatrix& a, double rank_rel) {
  return nullspace_impl(a, rank_rel);
}

RealMatrix nullspace(const RealMatrix& a, double rank_rel) { return nullspace_impl(a, rank_rel); }

ComplexMatrix range_basis(const ComplexMatrix& a, double rank_rel) {
  return range_impl(a, rank_rel);
}

RealMatrix range_basis(const RealMatrix& a, double rank_rel) { return range_impl(a, rank_rel); }

ComplexMatrix pinv(const ComplexMatrix& a, double rank_rel) {
  if (a.size() == 0) return ComplexMatrix::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double cutoff = rank_cutoff(rank_rel, sv(0));
  RealVector inv(sv.size());
  for (Index i = 0; i < sv.size(); ++i) inv(i) = sv(i) > cutoff ? 1.0 / sv(i) : 0.0;
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

double frame_excess(const ComplexMatrix& a, const ComplexMatrix& b) { return excess_impl(a, b); }
double frame_excess(const RealMatrix& a, const RealMatrix& b) { return excess_impl(a, b); }

double frame_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  return std::max(excess_impl(a, b), excess_impl(b, a));
}

double frame_distance(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  return std::max(excess_impl(a, b), excess_impl(b, a));
}

RealMatrix realify(const ComplexMatrix& x) {
  RealMatrix out(2 * x.rows(), x.cols());
  out.topRows(x.rows()) = x.real();
  out.bottomRows(x.rows()) = x.imag();
  return out;
}

ComplexMatrix complexify(const RealMatrix& x) {
  const Index n = x.rows() / 2;
  ComplexMatrix out(n, x.cols());
  out.real() = x.topRows(n);
  out.imag() = x.bottomRows(n);
  return out;
}

Subspace Subspace::from_frame(ComplexMatrix frame, double tol) {
  const ComplexMatrix gram = frame.adjoint() * frame;
  const double defect =
      gram.size() == 0 ? 0.0 : max_abs(gram - ComplexMatrix::Identity(gram.rows(), gram.cols()));
  if (defect > tol) {
    throw InvalidStructure("Subspace: frame columns are not orthonormal (defect " +
                           std::to_string(defect) + ")");
  }
  return Subspace(std::move(frame));
}

Subspace Subspace::span_of(const ComplexMatrix& vectors, double rank_rel) {
  return Subspace(range_basis(vectors, rank_rel));
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(ComplexMatrix(ambient_dim, 0)); }

Subspace Subspace::whole(Index ambient_dim) {
  return Subspace(ComplexMatrix::Identity(ambient_dim, ambient_dim));
}

ComplexMatrix Subspace::projection() const { return frame_ * frame_.adjoint(); }

double Subspace::distance(const ComplexVector& x) const {
  return (x - frame_ * (frame_.adjoint() * x)).norm();
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b, double rank_rel) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace_intersect");
  const Index n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace::zero(n);
  ComplexMatrix stacked(n, a.dim() + b.dim());
  stacked << a.frame(), -b.frame();
  const ComplexMatrix null = nullspace(stacked, rank_rel);
  if (null.cols() == 0) return Subspace::zero(n);
  return Subspace::span_of(a.frame() * null.topRows(a.dim()), rank_rel);
}

Subspace span_sum(const Subspace& a, const Subspace& b, double rank_rel) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("span_sum");
  ComplexMatrix joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.frame(), b.frame();
  return Subspace::span_of(joined, rank_rel);
}

Subspace orthocomplement(const Subspace& a, double rank_rel) {
  const Index n = a.ambient_dim();
  if (a.is_zero()) return Subspace::whole(n);
  return Subspace::from_frame(nullspace(ComplexMatrix(a.frame().adjoint()), rank_rel));
}

Subspace image(const ComplexMatrix& map, const Subspace& a, double rank_rel) {
  if (map.cols() != a.ambient_dim()) throw DimensionMismatch("image");
  if (a.is_zero()) return Subspace::zero(map.rows());
  return Subspace::span_of(map * a.frame(), rank_rel);
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace_distance");
  if (a.dim() != b.dim()) return 1.0;
  return frame_distance(a.frame(), b.frame());
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  return a.dim() == b.dim() && subspace_distance(a, b) <= tol;
}

}  // namespace carlab

#include "carlab/vn_alg.hpp"

#include <algorithm>
#include <cmath>

namespace carlab {

namespace {

constexpr int kMaxRounds = 64;
constexpr Index kDenseNullspaceLimit = 1024;  // N^2 up to which the stacked SVD is used
constexpr Index kClosurePairLimit = 128;

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

// Appends x to the orthonormal columns of basis if it is not already in the span.
// x is treated as zero when it is small against reference.
bool try_append(ComplexMatrix& basis, const ComplexVector& x, double reference, double rank_rel) {
  const double scale = x.norm();
  if (scale <= rank_rel * reference) return false;
  ComplexVector r = x / scale;
  for (int pass = 0; pass < 2; ++pass) {
    if (basis.cols() > 0) r -= basis * (basis.adjoint() * r);
  }
  const double res = r.norm();
  if (res <= rank_rel) return false;
  basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
  basis.col(basis.cols() - 1) = r / res;
  return true;
}

// Joint null space of X -> GX - XG over all given operators.
ComplexMatrix joint_commutant_basis(Index n, const std::vector<ComplexMatrix>& ops,
                                    double rank_rel) {
  const Index n2 = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (ops.empty()) return ComplexMatrix::Identity(n2, n2);
  if (n2 <= kDenseNullspaceLimit) {
    ComplexMatrix stacked(static_cast<Index>(ops.size()) * n2, n2);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      stacked.middleRows(static_cast<Index>(k) * n2, n2) =
          kron(id, ops[k]) - kron(ops[k].transpose(), id);
    }
    return nullspace(stacked, rank_rel);
  }
  ComplexMatrix gram = ComplexMatrix::Zero(n2, n2);
  for (const ComplexMatrix& g : ops) {
    const ComplexMatrix l = kron(id, g) - kron(g.transpose(), id);
    gram.noalias() += l.adjoint() * l;
  }
  const HermitianEigen e = eig_hermitian(0.5 * (gram + gram.adjoint()), 1e-6);
  const double top = std::max(e.values.maxCoeff(), 1e-300);
  // Eigenvalues of the Gram matrix are squared singular values.
  const double cutoff = std::max(rank_rel * rank_rel * 1e4, 1e-22) * top;
  Index count = 0;
  while (count < e.values.size() && e.values(count) <= cutoff) ++count;
  return e.vectors.leftCols(count);
}

}  // namespace

OperatorAlgebra::OperatorAlgebra(Index n, ComplexMatrix vec_basis,
                                 std::vector<ComplexMatrix> generators)
    : n_(n), basis_(std::move(vec_basis)), generators_(std::move(generators)) {
  if (basis_.rows() != n_ * n_) throw DimensionMismatch("OperatorAlgebra: basis rows != N^2");
}

ComplexMatrix OperatorAlgebra::element(Index k) const { return unvec(basis_.col(k), n_); }

double OperatorAlgebra::distance(const ComplexMatrix& x) const {
  const ComplexVector v = vec(x);
  const double scale = v.norm();
  if (scale == 0.0) return 0.0;
  if (dim() == 0) return 1.0;
  return (v - basis_ * (basis_.adjoint() * v)).norm() / scale;
}

bool OperatorAlgebra::contains_identity(double tol) const {
  return distance(ComplexMatrix::Identity(n_, n_)) <= tol;
}

double OperatorAlgebra::closure_defect() const {
  double defect = 0.0;
  const Index m = std::min(dim(), kClosurePairLimit);
  for (Index i = 0; i < dim(); ++i) {
    const ComplexMatrix bi = element(i);
    defect = std::max(defect, distance(bi.adjoint()));
    if (i >= m) continue;
    for (Index j = 0; j < m; ++j) defect = std::max(defect, distance(bi * element(j)));
  }
  return defect;
}

OperatorAlgebra algebra_span(Index n, const std::vector<ComplexMatrix>& generators,
                             double rank_rel) {
  std::vector<ComplexMatrix> letters;
  for (const ComplexMatrix& g : generators) {
    if (g.rows() != n || g.cols() != n) throw DimensionMismatch("algebra_span: generator size");
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }
  ComplexMatrix basis(n * n, 0);
  std::vector<Index> frontier;
  std::vector<double> letter_norms;
  for (const ComplexMatrix& g : letters) letter_norms.push_back(g.norm());
  try_append(basis, vec(ComplexMatrix::Identity(n, n)), 1.0, rank_rel);
  frontier.push_back(0);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (try_append(basis, vec(letters[i]), letter_norms[i], rank_rel)) {
      frontier.push_back(basis.cols() - 1);
    }
  }
  int rounds = 0;
  while (!frontier.empty()) {
    if (++rounds > kMaxRounds) throw InternalError("algebra_span: no stabilization in 64 rounds");
    std::vector<Index> next;
    for (Index k : frontier) {
      const ComplexMatrix b = unvec(basis.col(k), n);
      for (std::size_t i = 0; i < letters.size(); ++i) {
        // b has unit HS norm, so ||g b|| <= ||g||.
        if (try_append(basis, vec(letters[i] * b), letter_norms[i], rank_rel)) {
          next.push_back(basis.cols() - 1);
        }
      }
    }
    frontier = std::move(next);
  }
  return OperatorAlgebra(n, std::move(basis), generators);
}

OperatorAlgebra commutant(const OperatorAlgebra& a, double rank_rel) {
  std::vector<ComplexMatrix> ops;
  if (!a.generators().empty()) {
    for (const ComplexMatrix& g : a.generators()) {
      ops.push_back(g);
      ops.push_back(g.adjoint());
    }
  } else {
    // The span is *-closed, so the basis alone determines the commutant.
    for (Index k = 0; k < a.dim(); ++k) ops.push_back(a.element(k));
  }
  return OperatorAlgebra(a.space_dim(), joint_commutant_basis(a.space_dim(), ops, rank_rel), {});
}

OperatorAlgebra double_commutant(const OperatorAlgebra& a, double rank_rel) {
  return commutant(commutant(a, rank_rel), rank_rel);
}

OperatorAlgebra full_algebra(Index n) {
  return OperatorAlgebra(n, ComplexMatrix::Identity(n * n, n * n), {});
}

OperatorAlgebra scalar_algebra(Index n) {
  return OperatorAlgebra(n, vec(ComplexMatrix::Identity(n, n)) / std::sqrt(static_cast<double>(n)),
                         {});
}

OperatorAlgebra conjugated(const OperatorAlgebra& a, const ComplexMatrix& u) {
  const Index n = a.space_dim();
  ComplexMatrix basis(n * n, a.dim());
  for (Index k = 0; k < a.dim(); ++k) basis.col(k) = vec(u * a.element(k) * u.adjoint());
  std::vector<ComplexMatrix> gens;
  for (const ComplexMatrix& g : a.generators()) gens.push_back(u * g * u.adjoint());
  return OperatorAlgebra(n, std::move(basis), std::move(gens));
}

OperatorAlgebra tensor_algebra(const OperatorAlgebra& a, const OperatorAlgebra& b) {
  const Index n = a.space_dim() * b.space_dim();
  ComplexMatrix basis(n * n, a.dim() * b.dim());
  for (Index i = 0; i < a.dim(); ++i) {
    const ComplexMatrix ai = a.element(i);
    for (Index j = 0; j < b.dim(); ++j) basis.col(i * b.dim() + j) = vec(kron(ai, b.element(j)));
  }
  return OperatorAlgebra(n, std::move(basis), {});
}

double span_excess(const OperatorAlgebra& a, const OperatorAlgebra& b) {
  if (a.space_dim() != b.space_dim()) throw DimensionMismatch("span_excess");
  if (b.dim() == 0) return 0.0;
  if (a.dim() == 0) return 1.0;
  return frame_excess(a.vec_basis(), b.vec_basis());
}

double span_distance(const OperatorAlgebra& a, const OperatorAlgebra& b) {
  if (a.space_dim() != b.space_dim()) throw DimensionMismatch("span_distance");
  if (a.dim() != b.dim()) return 1.0;
  if (a.dim() == 0) return 0.0;
  return frame_distance(a.vec_basis(), b.vec_basis());
}

OperatorAlgebra local_algebra(const Subspace& q, const Representation& rep) {
  if (q.ambient_dim() != rep.one_particle_dim()) throw DimensionMismatch("local_algebra");
  std::vector<ComplexMatrix> gens;
  for (Index k = 0; k < q.dim(); ++k) gens.push_back(rep.pi_a(q.frame().col(k)));
  return algebra_span(rep.fock_dim(), gens);
}

OperatorAlgebra twisted_algebra(const OperatorAlgebra& a, const ComplexMatrix& z_tilde) {
  return conjugated(a, z_tilde);
}

OperatorAlgebra twisted_by_grading(const OperatorAlgebra& a, const ComplexMatrix& z) {
  const Index n = a.space_dim();
  ComplexMatrix images(n * n, a.dim());
  for (Index k = 0; k < a.dim(); ++k) {
    const ParityParts parts = parity_blocks(a.element(k), z);
    images.col(k) = vec(parts.even + kI * z * parts.odd);
  }
  return OperatorAlgebra(n, range_basis(images, 1e-9), {});
}

bool check_twisted_causality(const Subspace& q, const Representation& rep, double tol) {
  const OperatorAlgebra m = local_algebra(q, rep);
  const OperatorAlgebra mperp = local_algebra(orthocomplement(q), rep);
  const OperatorAlgebra twisted = twisted_algebra(mperp, parity_ops(rep).z_tilde);
  return span_excess(commutant(m), twisted) <= tol;
}

DualityReport check_twisted_duality(const Subspace& q, const Representation& rep,
                                    const std::string& instance_id, double tol) {
  const ParityOps ops = parity_ops(rep);
  const OperatorAlgebra m = local_algebra(q, rep);
  const OperatorAlgebra mc = commutant(m);
  const OperatorAlgebra mperp = local_algebra(orthocomplement(q), rep);
  const OperatorAlgebra twisted = twisted_algebra(mperp, ops.z_tilde);
  const OperatorAlgebra graded = twisted_by_grading(mperp, ops.z);

  DualityReport r;
  r.instance_id = instance_id;
  r.fock_dim = rep.fock_dim();
  r.dim_m = m.dim();
  r.dim_m_commutant = mc.dim();
  r.dim_twisted = twisted.dim();
  r.inclusion_defect = span_excess(mc, twisted);
  r.equality_defect = span_distance(mc, twisted);
  r.grading_defect = span_distance(twisted, graded);
  r.bicommutant_defect = span_distance(commutant(mc), m);
  r.verdict = r.dim_m_commutant == r.dim_twisted && r.inclusion_defect <= tol &&
              r.equality_defect <= tol && r.grading_defect <= tol && r.bicommutant_defect <= tol;
  return r;
}

}  // namespace carlab

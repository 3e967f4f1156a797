#include "carlab/fock_rep.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include <Eigen/LU>

namespace carlab {

namespace {

int popcount(Index mask) { return std::popcount(static_cast<std::uint64_t>(mask)); }

// Bits of a mask, ascending.
std::vector<Index> bits_of(Index mask) {
  std::vector<Index> out;
  for (Index i = 0; mask >> i; ++i) {
    if ((mask >> i) & 1) out.push_back(i);
  }
  return out;
}

int inversions(const std::vector<int>& seq) {
  int count = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] > seq[j]) ++count;
    }
  }
  return count;
}

void matchings(std::vector<int> rest, std::vector<std::pair<int, int>>& current,
               std::vector<std::vector<std::pair<int, int>>>& out) {
  if (rest.empty()) {
    out.push_back(current);
    return;
  }
  // rest is descending; its head is the largest remaining index.
  const int alpha = rest.front();
  for (std::size_t b = 1; b < rest.size(); ++b) {
    std::vector<int> next;
    next.reserve(rest.size() - 2);
    for (std::size_t i = 1; i < rest.size(); ++i) {
      if (i != b) next.push_back(rest[i]);
    }
    current.emplace_back(alpha, rest[b]);
    matchings(std::move(next), current, out);
    current.pop_back();
  }
}

void add_scaled(ComplexMatrix& target, const SparseMatrix& s, Complex c) {
  if (c == Complex(0.0, 0.0)) return;
  for (Index k = 0; k < s.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(s, k); it; ++it) {
      target(it.row(), it.col()) += c * it.value();
    }
  }
}

}  // namespace

FockSpace::FockSpace(const BasisProjection& p)
    : h_dim_(p.space().dim()),
      frame_(p.one_particle().frame()),
      p_(p.matrix()),
      gamma_(p.space().gamma()) {
  d_ = frame_.cols();
  if (d_ > 12) {
    throw FockCapExceeded("Fock dimension 2^" + std::to_string(d_) + " exceeds the cap 2^12");
  }
  const Index n = fock_dim();
  creation_.reserve(static_cast<std::size_t>(d_));
  for (Index i = 0; i < d_; ++i) {
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(static_cast<std::size_t>(n / 2));
    const Index bit = Index{1} << i;
    for (Index s = 0; s < n; ++s) {
      if (s & bit) continue;
      const double sign = (popcount(s & (bit - 1)) % 2 == 0) ? 1.0 : -1.0;
      entries.emplace_back(s | bit, s, Complex(sign, 0.0));
    }
    SparseMatrix c(n, n);
    c.setFromTriplets(entries.begin(), entries.end());
    creation_.push_back(std::move(c));
  }
}

ComplexMatrix FockSpace::creation(const ComplexVector& v) const {
  const ComplexVector c = coordinates(v);
  ComplexMatrix out = ComplexMatrix::Zero(fock_dim(), fock_dim());
  for (Index i = 0; i < d_; ++i) add_scaled(out, creation_[static_cast<std::size_t>(i)], c(i));
  return out;
}

ComplexMatrix FockSpace::annihilation(const ComplexVector& v) const {
  return creation(v).adjoint();
}

ComplexMatrix FockSpace::pi_a(const ComplexVector& f) const {
  if (f.size() != h_dim_) throw DimensionMismatch("pi_a: vector size");
  const ComplexVector u = coordinates(gamma_.apply(f));
  const ComplexVector w = coordinates(f);
  ComplexMatrix out = ComplexMatrix::Zero(fock_dim(), fock_dim());
  for (Index i = 0; i < d_; ++i) add_scaled(out, creation_[static_cast<std::size_t>(i)], u(i));
  ComplexMatrix down = ComplexMatrix::Zero(fock_dim(), fock_dim());
  for (Index i = 0; i < d_; ++i) add_scaled(down, creation_[static_cast<std::size_t>(i)], w(i));
  out += down.adjoint();
  return out;
}

ComplexMatrix FockSpace::parity() const {
  const Index n = fock_dim();
  ComplexMatrix z = ComplexMatrix::Zero(n, n);
  for (Index s = 0; s < n; ++s) z(s, s) = popcount(s) % 2 == 0 ? 1.0 : -1.0;
  return z;
}

ComplexVector FockSpace::vacuum() const {
  ComplexVector omega = ComplexVector::Zero(fock_dim());
  omega(0) = 1.0;
  return omega;
}

double FockSpace::off_p_norm(const ComplexVector& v) const {
  return (v - p_ * v).norm();
}

ComplexVector FockSpace::wedge(const ComplexMatrix& vectors) const {
  return wedge_coordinates(frame_.adjoint() * vectors);
}

ComplexVector FockSpace::wedge_coordinates(const ComplexMatrix& coords) const {
  if (coords.rows() != d_) throw DimensionMismatch("wedge: coordinate rows");
  const Index k = coords.cols();
  ComplexVector out = ComplexVector::Zero(fock_dim());
  if (k == 0) {
    out(0) = 1.0;
    return out;
  }
  if (k > d_) return out;
  for (Index s = 0; s < fock_dim(); ++s) {
    if (popcount(s) != k) continue;
    const std::vector<Index> rows = bits_of(s);
    ComplexMatrix minor(k, k);
    for (Index r = 0; r < k; ++r) minor.row(r) = coords.row(rows[static_cast<std::size_t>(r)]);
    out(s) = minor.determinant();
  }
  return out;
}

std::vector<Index> FockSpace::particle_sector(Index n) const {
  std::vector<Index> out;
  for (Index s = 0; s < fock_dim(); ++s) {
    if (popcount(s) == n) out.push_back(s);
  }
  return out;
}

ParityOps parity_ops(const ComplexMatrix& z) {
  const Index n = z.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ParityOps ops;
  ops.z = z;
  ops.e_plus = 0.5 * (id + z);
  ops.e_minus = 0.5 * (id - z);
  ops.z_tilde = (id + kI * z) / Complex(1.0, 1.0);
  return ops;
}

ParityOps parity_ops(const Representation& rep) { return parity_ops(rep.parity()); }

ParityParts parity_blocks(const ComplexMatrix& x, const ComplexMatrix& z) {
  const ParityOps ops = parity_ops(z);
  ParityParts parts;
  const ComplexMatrix zxz = z * x * z;
  parts.even = 0.5 * (x + zxz);
  parts.odd = 0.5 * (x - zxz);
  parts.block_defect = std::max({
      op_norm(ComplexMatrix(ops.e_plus * parts.even * ops.e_minus)),
      op_norm(ComplexMatrix(ops.e_minus * parts.even * ops.e_plus)),
      op_norm(ComplexMatrix(ops.e_plus * parts.odd * ops.e_plus)),
      op_norm(ComplexMatrix(ops.e_minus * parts.odd * ops.e_minus)),
  });
  return parts;
}

std::uint64_t pairing_count(int n, int p) {
  if (p < 0 || 2 * p > n) return 0;
  // C(n, 2p)
  std::uint64_t binom = 1;
  for (int i = 1; i <= 2 * p; ++i) binom = binom * static_cast<std::uint64_t>(n - 2 * p + i) / static_cast<std::uint64_t>(i);
  // (2p)! / (p! 2^p) = (2p-1)!!
  std::uint64_t double_factorial = 1;
  for (int i = 2 * p - 1; i > 1; i -= 2) double_factorial *= static_cast<std::uint64_t>(i);
  return binom * double_factorial;
}

std::vector<PairingTerm> enumerate_pairings(int n, int p) {
  if (n < 0 || p < 0 || 2 * p > n) throw InvalidStructure("enumerate_pairings: need 0 <= 2p <= n");
  const int k = n - 2 * p;
  std::vector<PairingTerm> out;
  const int base = (n * (n - 1) / 2) % 2;
  // Survivor sets as bitmasks over {1..n} with k bits.
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> survivors;
    std::vector<int> rest;
    for (int i = n; i >= 1; --i) {
      if (mask & (1u << (i - 1))) {
        survivors.push_back(i);
      } else {
        rest.push_back(i);
      }
    }
    std::vector<std::vector<std::pair<int, int>>> all;
    std::vector<std::pair<int, int>> current;
    matchings(rest, current, all);
    for (auto& pairs : all) {
      std::vector<int> bottom;
      bottom.reserve(static_cast<std::size_t>(n));
      for (const auto& [a, b] : pairs) {
        bottom.push_back(a);
        bottom.push_back(b);
      }
      bottom.insert(bottom.end(), survivors.begin(), survivors.end());
      PairingTerm t;
      t.pairs = std::move(pairs);
      t.survivors = survivors;
      t.sign = ((base + inversions(bottom)) % 2 == 0) ? 1 : -1;
      out.push_back(std::move(t));
    }
  }
  return out;
}

ComplexVector vacuum_expansion(const std::vector<ComplexVector>& f_list, const FockSpace& fock) {
  const int n = static_cast<int>(f_list.size());
  ComplexVector out = ComplexVector::Zero(fock.fock_dim());
  // Coordinates of P f_i and P Gamma f_i in the ONB of p.
  std::vector<ComplexVector> pf;
  std::vector<ComplexVector> pgf;
  for (const ComplexVector& f : f_list) {
    pf.push_back(fock.coordinates(f));
    pgf.push_back(fock.coordinates(fock.gamma().apply(f)));
  }
  for (int p = 0; 2 * p <= n; ++p) {
    const int k = n - 2 * p;
    if (k > fock.modes()) continue;
    for (const PairingTerm& t : enumerate_pairings(n, p)) {
      Complex weight = static_cast<double>(t.sign);
      for (const auto& [a, b] : t.pairs) {
        weight *= pf[static_cast<std::size_t>(a - 1)].dot(pgf[static_cast<std::size_t>(b - 1)]);
      }
      if (weight == Complex(0.0, 0.0)) continue;
      ComplexMatrix coords(fock.modes(), k);
      for (int c = 0; c < k; ++c) {
        coords.col(c) = pgf[static_cast<std::size_t>(t.survivors[static_cast<std::size_t>(c)] - 1)];
      }
      out += weight * fock.wedge_coordinates(coords);
    }
  }
  return out;
}

ComplexMatrix second_quantization(const ComplexMatrix& a) {
  const Index d = a.rows();
  if (a.cols() != d) throw DimensionMismatch("second_quantization: square matrix expected");
  if (d > 12) throw FockCapExceeded("second_quantization: too many modes");
  const Index n = Index{1} << d;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index t = 0; t < n; ++t) {
    const std::vector<Index> rows = bits_of(t);
    const Index k = static_cast<Index>(rows.size());
    for (Index s = 0; s < n; ++s) {
      if (popcount(s) != k) continue;
      if (k == 0) {
        out(t, s) = 1.0;
        continue;
      }
      const std::vector<Index> cols = bits_of(s);
      ComplexMatrix minor(k, k);
      for (Index r = 0; r < k; ++r) {
        for (Index c = 0; c < k; ++c) {
          minor(r, c) = a(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
        }
      }
      out(t, s) = minor.determinant();
    }
  }
  return out;
}

AntilinearMap reversed_second_quantization(const AntilinearMap& k) {
  ComplexMatrix lambda = second_quantization(k.kernel());
  // Reversing n factors costs (-1)^{n(n-1)/2}.
  for (Index t = 0; t < lambda.rows(); ++t) {
    const int n = popcount(t);
    if ((n * (n - 1) / 2) % 2 != 0) lambda.row(t) *= -1.0;
  }
  return AntilinearMap(std::move(lambda));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

TensorRepresentation::TensorRepresentation(std::shared_ptr<const Representation> r0,
                                           std::shared_ptr<const Representation> r1,
                                           TensorVariant variant)
    : r0_(std::move(r0)), r1_(std::move(r1)), variant_(variant) {
  if (!r0_ || !r1_) throw InvalidStructure("TensorRepresentation: null factor");
  if (r0_->fock_dim() * r1_->fock_dim() > kFockCap) {
    throw FockCapExceeded("TensorRepresentation: Fock dimension exceeds the cap 2^12");
  }
}

Index TensorRepresentation::one_particle_dim() const {
  return r0_->one_particle_dim() + r1_->one_particle_dim();
}

Index TensorRepresentation::fock_dim() const { return r0_->fock_dim() * r1_->fock_dim(); }

ComplexMatrix TensorRepresentation::pi_a(const ComplexVector& f) const {
  if (f.size() != one_particle_dim()) throw DimensionMismatch("TensorRepresentation::pi_a");
  const Index n0 = r0_->one_particle_dim();
  const ComplexVector f0 = f.head(n0);
  const ComplexVector f1 = f.tail(r1_->one_particle_dim());
  const ComplexMatrix a0 = r0_->pi_a(f0);
  const ComplexMatrix a1 = r1_->pi_a(f1);
  const ComplexMatrix id0 = ComplexMatrix::Identity(r0_->fock_dim(), r0_->fock_dim());
  const ComplexMatrix id1 = ComplexMatrix::Identity(r1_->fock_dim(), r1_->fock_dim());
  if (variant_ == TensorVariant::kA) {
    return kron(a0, id1) + kron(r0_->parity(), a1);
  }
  return kron(a0, r1_->parity()) + kron(id0, a1);
}

ComplexMatrix TensorRepresentation::parity() const {
  return kron(r0_->parity(), r1_->parity());
}

ComplexVector TensorRepresentation::vacuum() const {
  const ComplexVector v0 = r0_->vacuum();
  const ComplexVector v1 = r1_->vacuum();
  ComplexVector out(v0.size() * v1.size());
  for (Index i = 0; i < v0.size(); ++i) out.segment(i * v1.size(), v1.size()) = v0(i) * v1;
  return out;
}

double CarResiduals::max() const {
  return std::max({anticommutator, adjoint, vacuum, antilinearity});
}

CarResiduals car_residuals(const Representation& rep, const AntilinearMap& gamma,
                           const ComplexMatrix& p, const std::vector<ComplexVector>& vectors) {
  const Index n = rep.fock_dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexVector omega = rep.vacuum();
  const Complex c(0.6, 0.8);
  std::vector<ComplexMatrix> ops;
  ops.reserve(vectors.size());
  for (const ComplexVector& f : vectors) ops.push_back(rep.pi_a(f));

  CarResiduals r;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const ComplexVector& f = vectors[i];
    const ComplexMatrix& af = ops[i];
    r.adjoint = std::max(r.adjoint, op_norm(ComplexMatrix(af.adjoint() - rep.pi_a(gamma.apply(f)))));
    const ComplexVector out = af * omega;
    const double off = (f - p * f).squaredNorm();
    r.vacuum = std::max(r.vacuum, std::abs(out.squaredNorm() - off));
    r.antilinearity = std::max(
        r.antilinearity, op_norm(ComplexMatrix(rep.pi_a(c * f) - std::conj(c) * af)));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const ComplexMatrix& ah = ops[j];
      const ComplexMatrix anti = af * ah.adjoint() + ah.adjoint() * af - f.dot(vectors[j]) * id;
      r.anticommutator = std::max(r.anticommutator, op_norm(anti));
    }
  }
  return r;
}

}  // namespace carlab

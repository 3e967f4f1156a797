#pragma once

// Reference computations that share no code path with the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

/// Jordan-Wigner creation operator c_i^* on d modes. Basis index = occupation
/// bitmask with mode 0 the least significant bit.
inline Matrix jordan_wigner_creation(int d, int i) {
  Matrix sigma_plus = Matrix::Zero(2, 2);
  sigma_plus(1, 0) = 1.0;
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1.0;
  const Matrix id = Matrix::Identity(2, 2);
  Matrix out = Matrix::Identity(1, 1);
  for (int mode = d - 1; mode >= 0; --mode) {
    const Matrix& factor = mode == i ? sigma_plus : (mode < i ? z : id);
    out = kron(out, factor);
  }
  return out;
}

/// Projection onto ran A cap ran B as the limit of (P_A P_B P_A)^(2^k).
inline Matrix intersection_by_powers(const Matrix& pa, const Matrix& pb, int squarings = 60) {
  Matrix m = pa * pb * pa;
  m = 0.5 * (m + m.adjoint()).eval();
  for (int k = 0; k < squarings; ++k) {
    m = (m * m).eval();
    m = 0.5 * (m + m.adjoint()).eval();
    // Hold eigenvalue 1 in place against rounding drift.
    const double top = m.operatorNorm();
    if (std::abs(top - 1.0) < 1e-6) m /= top;
  }
  return m;
}

inline double trace_rank(const Matrix& projection) { return std::round(projection.trace().real()); }

/// Counts sets of p disjoint pairs inside {1..n} by direct enumeration over pair bitmasks.
inline std::uint64_t brute_force_pairings(int n, int p) {
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) all.emplace_back(a, b);
  }
  std::uint64_t count = 0;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, std::size_t start, unsigned used) -> void {
    if (static_cast<int>(chosen.size()) == p) {
      ++count;
      return;
    }
    for (std::size_t k = start; k < all.size(); ++k) {
      const unsigned mask = (1u << all[k].first) | (1u << all[k].second);
      if (used & mask) continue;
      chosen.push_back(static_cast<int>(k));
      self(self, k + 1, used | mask);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0u);
  return count;
}

inline Vector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

/// Dimension of the algebra generated by the matrices, via the rank of all
/// words of length up to max_len in the generators and their adjoints.
inline Eigen::Index word_span_dim(const std::vector<Matrix>& gens, int max_len) {
  std::vector<Matrix> letters;
  for (const Matrix& g : gens) {
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }
  const Eigen::Index n = gens.front().rows();
  std::vector<Matrix> words{Matrix::Identity(n, n)};
  std::vector<Matrix> layer = words;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Matrix> next;
    for (const Matrix& w : layer) {
      for (const Matrix& l : letters) next.push_back(l * w);
    }
    words.insert(words.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  Matrix stacked(n * n, static_cast<Eigen::Index>(words.size()));
  for (std::size_t k = 0; k < words.size(); ++k) {
    stacked.col(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const Vector>(words[k].data(), n * n);
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
  qr.setThreshold(1e-9);
  return qr.rank();
}

}  // namespace oracle

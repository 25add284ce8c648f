// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qopkit/errors.hpp"

namespace qopkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kEigTol = 1e-10;  // relative reconstruction tolerance
inline constexpr double kPsdTol = 1e-9;   // absolute eigenvalue floor

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionMismatch(std::string(what) + ": matrix not square");
}

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(what) + ": shape mismatch");
}

inline void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
}

// Pauli operators.
inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
/// Phase-bit flip -i*sigma_y = sigma_x*sigma_z.
inline Matrix pauli_y_prime() {
  Matrix m(2, 2);
  m << 0, -1, 1, 0;
  return m;
}

/// Eigendecomposition of a Hermitian matrix with deterministic ordering:
/// eigenvalues descending, each eigenvector phase-normalized so its first
/// significantly nonzero component is real positive.
struct HermitianEig {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // orthonormal columns
};

namespace detail {

inline void phase_normalize_column(Matrix& v, Eigen::Index col) {
  const double scale = v.col(col).cwiseAbs().maxCoeff();
  if (scale <= 0.0) return;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const Complex x = v(i, col);
    if (std::abs(x) > 1e-12 * scale) {
      v.col(col) *= std::conj(x) / std::abs(x);
      return;
    }
  }
}

// Lexicographic comparison of phase-normalized columns, used only to order
// eigenvectors inside a degenerate eigenvalue cluster.
inline bool column_less(const Matrix& v, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const Complex x = v(i, a), y = v(i, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace detail

inline HermitianEig eig_hermitian(const Matrix& h, double tol = kEigTol) {
  require_square(h, "eig_hermitian");
  require_finite(h, "eig_hermitian");
  const double scale = 1.0 + max_abs(h);
  if (max_abs(h - h.adjoint()) > tol * scale)
    throw NotHermitian("eig_hermitian: input is not Hermitian within tolerance");

  Eigen::SelfAdjointEigenSolver<Matrix> solver((h + Matrix(h.adjoint())) * 0.5);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("eig_hermitian: eigensolver failed to converge");

  const Eigen::Index n = h.rows();
  Matrix v = solver.eigenvectors();
  RealVector w = solver.eigenvalues();
  for (Eigen::Index j = 0; j < n; ++j) detail::phase_normalize_column(v, j);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(w(a) - w(b)) > tol * scale) return w(a) > w(b);
    return detail::column_less(v, a, b);
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = w(order[static_cast<std::size_t>(j)]);
    out.eigenvectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

/// Positive-semidefinite square root.  Eigenvalues within psd_tol of zero are
/// clipped; anything more negative is rejected.
inline Matrix sqrt_psd(const Matrix& a, double psd_tol = kPsdTol) {
  const HermitianEig eig = eig_hermitian(a);
  const Eigen::Index n = a.rows();
  RealVector w = eig.eigenvalues;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w(i) < -psd_tol) throw NotPSD("sqrt_psd: negative eigenvalue");
    // Clipping near-zero eigenvalues matters: sqrt amplifies spurious
    // roundoff-scale eigenvalues (e.g. of a projector) to sqrt-roundoff size.
    w(i) = (w(i) <= psd_tol) ? 0.0 : std::sqrt(w(i));
  }
  return eig.eigenvectors * w.asDiagonal() * eig.eigenvectors.adjoint();
}

/// Unitary factor of the polar decomposition T = U sqrt(T^dag T).  On the
/// null space of T the factor is completed by pairing the left and right
/// singular vectors in index order.
inline Matrix polar_unitary(const Matrix& t) {
  require_square(t, "polar_unitary");
  require_finite(t, "polar_unitary");
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// Operator order test: A >= B iff min eigenvalue of A - B >= -tol.
inline bool psd_order(const Matrix& a, const Matrix& b, double tol = kPsdTol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("psd_order: dimension mismatch");
  const HermitianEig eig = eig_hermitian(a - b, 1e-8);
  return eig.eigenvalues(eig.eigenvalues.size() - 1) >= -tol;
}

/// Checks the operator-monotonicity of the square root on a concrete pair:
/// given PSD A >= B, returns whether sqrt(A) >= sqrt(B).  A false return at
/// tol = 1e-8 signals a defect in the eigendecomposition machinery.
inline bool verify_sqrt_monotone(const Matrix& a, const Matrix& b, double tol = 1e-8) {
  if (!psd_order(a, b, tol)) throw DomainError("verify_sqrt_monotone: A >= B precondition fails");
  return psd_order(sqrt_psd(a), sqrt_psd(b), tol);
}

/// Partial trace over the factors not listed in `keep`.  `dims` are the
/// tensor-factor dimensions, leftmost factor most significant; the result
/// keeps the listed factors in their original order.
inline Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                            const std::vector<std::size_t>& keep) {
  require_square(m, "partial_trace");
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) total *= d;
  if (total != m.rows()) throw DimensionMismatch("partial_trace: dims do not factor the matrix");

  const std::size_t nf = dims.size();
  std::vector<bool> kept(nf, false);
  Eigen::Index keep_dim = 1, trace_dim = 1;
  for (std::size_t f : keep) {
    if (f >= nf) throw DimensionMismatch("partial_trace: keep index out of range");
    kept[f] = true;
  }
  for (std::size_t f = 0; f < nf; ++f) (kept[f] ? keep_dim : trace_dim) *= dims[f];

  // Strides of each factor in the flattened index.
  std::vector<Eigen::Index> stride(nf, 1);
  for (std::size_t f = nf; f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  // Enumerate kept and traced multi-indices.
  std::vector<std::size_t> keep_f, trace_f;
  for (std::size_t f = 0; f < nf; ++f) (kept[f] ? keep_f : trace_f).push_back(f);

  const auto decode = [&](Eigen::Index flat, const std::vector<std::size_t>& factors) {
    // Returns the full-space offset of a flat index over `factors`.
    Eigen::Index offset = 0;
    for (std::size_t i = factors.size(); i-- > 0;) {
      const std::size_t f = factors[i];
      offset += (flat % dims[f]) * stride[f];
      flat /= dims[f];
    }
    return offset;
  };

  for (Eigen::Index r = 0; r < keep_dim; ++r) {
    const Eigen::Index ro = decode(r, keep_f);
    for (Eigen::Index c = 0; c < keep_dim; ++c) {
      const Eigen::Index co = decode(c, keep_f);
      Complex sum = 0;
      for (Eigen::Index t = 0; t < trace_dim; ++t) {
        const Eigen::Index to = decode(t, trace_f);
        sum += m(ro + to, co + to);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

}  // namespace qopkit

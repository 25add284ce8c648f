// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "qopkit/linalg.hpp"

namespace qopkit {

// Operator kets |A) = A with the trace-norm inner product (A|B) = tr(A^dag B).
inline Complex op_inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "op_inner");
  return (a.adjoint() * b).trace();
}

/// Row-major coordinates of A in the outer-product operator basis
/// tau_{jk} = |e_j><e_k| with composite index alpha = j*D + k, i.e.
/// a_alpha = (tau_alpha|A) = A(j, k).
inline Vector op_coords(const Matrix& a) {
  require_square(a, "op_coords");
  const Eigen::Index d = a.rows();
  Vector v(d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) v(j * d + k) = a(j, k);
  return v;
}

inline Matrix op_from_coords(const Vector& v, Eigen::Index d) {
  if (v.size() != d * d) throw DimensionMismatch("op_from_coords: size mismatch");
  Matrix a(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) a(j, k) = v(j * d + k);
  return a;
}

/// System basis e_j, reference basis f_j (both fixed to the standard basis)
/// and the unnormalized maximally entangled vector Psi = sum_j f_j (x) e_j.
/// RQ composite indices are reference-major: (j, k) -> j*D + k.
struct ReferenceFrame {
  Eigen::Index dim;

  explicit ReferenceFrame(Eigen::Index d) : dim(d) {
    if (d <= 0) throw DimensionMismatch("ReferenceFrame: dimension must be positive");
  }

  Vector psi() const {
    Vector p = Vector::Zero(dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j) p(j * dim + j) = 1.0;
    return p;
  }
};

/// VEC of A: |Phi_A> = (1 (x) A)|Psi>, with <f_j, e_k|Phi_A> = <e_k|A|e_j>.
inline Vector vec(const Matrix& a, const ReferenceFrame& frame) {
  require_square(a, "vec");
  if (a.rows() != frame.dim) throw DimensionMismatch("vec: frame dimension mismatch");
  const Eigen::Index d = frame.dim;
  Vector v(d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) v(j * d + k) = a(k, j);
  return v;
}

inline Matrix unvec(const Vector& v, const ReferenceFrame& frame) {
  const Eigen::Index d = frame.dim;
  if (v.size() != d * d) throw DimensionMismatch("unvec: size mismatch");
  Matrix a(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) a(k, j) = v(j * d + k);
  return a;
}

/// A superoperator stored as its D^2 x D^2 left-right-action matrix
/// S_{alpha beta} = (tau_alpha| S |tau_beta) over the outer-product basis.
class Superoperator {
 public:
  Superoperator(Eigen::Index dim, Matrix lr) : dim_(dim), lr_(std::move(lr)) {
    if (lr_.rows() != dim_ * dim_ || lr_.cols() != dim_ * dim_)
      throw DimensionMismatch("Superoperator: left-right matrix must be D^2 x D^2");
    require_finite(lr_, "Superoperator");
  }

  Eigen::Index dim() const { return dim_; }
  const Matrix& lr_matrix() const { return lr_; }

  static Superoperator zero(Eigen::Index d) {
    return Superoperator(d, Matrix::Zero(d * d, d * d));
  }

  /// The superoperator whose ordinary action is the identity map A -> A.
  static Superoperator identity_ordinary(Eigen::Index d) {
    return from_operator_pairs({{Matrix::Identity(d, d), Matrix::Identity(d, d)}});
  }

  /// The superoperator whose left-right action is the identity.
  static Superoperator identity_leftright(Eigen::Index d) {
    return Superoperator(d, Matrix::Identity(d * d, d * d));
  }

  /// Encodes the ordinary action A -> sum_i L_i A R_i^dag.
  static Superoperator from_operator_pairs(const std::vector<std::pair<Matrix, Matrix>>& pairs) {
    if (pairs.empty()) throw DimensionMismatch("from_operator_pairs: empty pair list");
    const Eigen::Index d = pairs.front().first.rows();
    Matrix lr = Matrix::Zero(d * d, d * d);
    for (const auto& [l, r] : pairs) {
      require_square(l, "from_operator_pairs");
      require_same_shape(l, r, "from_operator_pairs");
      if (l.rows() != d) throw DimensionMismatch("from_operator_pairs: inconsistent dimension");
      lr += op_coords(l) * op_coords(r).adjoint();
    }
    return Superoperator(d, std::move(lr));
  }

  static Superoperator from_kraus(const std::vector<Matrix>& kraus) {
    std::vector<std::pair<Matrix, Matrix>> pairs;
    pairs.reserve(kraus.size());
    for (const Matrix& k : kraus) pairs.emplace_back(k, k);
    return from_operator_pairs(pairs);
  }

  /// Index reshuffle between the left-right matrix and the natural matrix of
  /// the ordinary action (the matrix acting on row-major coordinates).  An
  /// involution: reshuffle(reshuffle(M)) = M.
  static Matrix reshuffle(const Matrix& m, Eigen::Index d) {
    Matrix out(d * d, d * d);
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index mm = 0; mm < d; ++mm)
          for (Eigen::Index k = 0; k < d; ++k)
            out(l * d + mm, j * d + k) = m(l * d + j, mm * d + k);
    return out;
  }

  /// Matrix of the ordinary action on row-major operator coordinates.
  Matrix natural_matrix() const { return reshuffle(lr_, dim_); }

  static Superoperator from_natural(const Matrix& nat, Eigen::Index d) {
    return Superoperator(d, reshuffle(nat, d));
  }

  Matrix apply_ordinary(const Matrix& a) const {
    if (a.rows() != dim_ || a.cols() != dim_)
      throw DimensionMismatch("apply_ordinary: dimension mismatch");
    return op_from_coords(natural_matrix() * op_coords(a), dim_);
  }

  Matrix apply_leftright(const Matrix& a) const {
    if (a.rows() != dim_ || a.cols() != dim_)
      throw DimensionMismatch("apply_leftright: dimension mismatch");
    return op_from_coords(lr_ * op_coords(a), dim_);
  }

  Complex supertrace() const { return lr_.trace(); }

  Superoperator operator+(const Superoperator& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("Superoperator+: dimension mismatch");
    return Superoperator(dim_, lr_ + o.lr_);
  }
  Superoperator operator-(const Superoperator& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("Superoperator-: dimension mismatch");
    return Superoperator(dim_, lr_ - o.lr_);
  }
  Superoperator operator*(Complex c) const { return Superoperator(dim_, lr_ * c); }

 private:
  Eigen::Index dim_;
  Matrix lr_;
};

/// Left-right multiplication: the product of the left-right matrices.
inline Superoperator lr_multiply(const Superoperator& t, const Superoperator& s) {
  if (t.dim() != s.dim()) throw DimensionMismatch("lr_multiply: dimension mismatch");
  return Superoperator(t.dim(), t.lr_matrix() * s.lr_matrix());
}

/// Composition T o S with respect to the ordinary action.
inline Superoperator ordinary_compose(const Superoperator& t, const Superoperator& s) {
  if (t.dim() != s.dim()) throw DimensionMismatch("ordinary_compose: dimension mismatch");
  return Superoperator::from_natural(t.natural_matrix() * s.natural_matrix(), t.dim());
}

/// Adjoint with respect to the left-right action.
inline Superoperator lr_adjoint(const Superoperator& s) {
  return Superoperator(s.dim(), s.lr_matrix().adjoint());
}

/// Adjoint with respect to the ordinary action (S^x), satisfying
/// tr([S^x(B)]^dag A) = tr(B^dag S(A)).
inline Superoperator ordinary_adjoint(const Superoperator& s) {
  const Eigen::Index d = s.dim();
  const Matrix& lr = s.lr_matrix();
  Matrix out(d * d, d * d);
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index k = 0; k < d; ++k)
          out(j * d + l, k * d + m) = std::conj(lr(l * d + j, m * d + k));
  return Superoperator(d, std::move(out));
}

/// Choi operator on RQ (reference-major): an index reshuffle of the
/// left-right matrix, <f_j, e_l| C |f_k, e_m> = S_{lj,mk}.
inline Matrix choi_of(const Superoperator& s, const ReferenceFrame& frame) {
  if (s.dim() != frame.dim) throw DimensionMismatch("choi_of: frame dimension mismatch");
  const Eigen::Index d = s.dim();
  const Matrix& lr = s.lr_matrix();
  Matrix c(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index m = 0; m < d; ++m)
          c(j * d + l, k * d + m) = lr(l * d + j, m * d + k);
  return c;
}

inline Superoperator superop_of_choi(const Matrix& c, const ReferenceFrame& frame) {
  const Eigen::Index d = frame.dim;
  if (c.rows() != d * d || c.cols() != d * d)
    throw DimensionMismatch("superop_of_choi: Choi must be D^2 x D^2");
  Matrix lr(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index m = 0; m < d; ++m)
          lr(l * d + j, m * d + k) = c(j * d + l, k * d + m);
  return Superoperator(d, std::move(lr));
}

/// A map is completely positive iff it is a positive superoperator relative
/// to the left-right action.
inline bool is_completely_positive(const Superoperator& s, double tol = kPsdTol) {
  const Matrix& lr = s.lr_matrix();
  const double scale = 1.0 + max_abs(lr);
  if (max_abs(lr - lr.adjoint()) > tol * scale) return false;
  const HermitianEig eig = eig_hermitian(lr, 1e-8);
  return eig.eigenvalues(eig.eigenvalues.size() - 1) >= -tol;
}

inline bool is_trace_nonincreasing(const Superoperator& s, double tol = kPsdTol) {
  const Matrix g = ordinary_adjoint(s).apply_ordinary(Matrix::Identity(s.dim(), s.dim()));
  return psd_order(Matrix::Identity(s.dim(), s.dim()), (g + Matrix(g.adjoint())) * 0.5, tol);
}

inline bool is_trace_preserving(const Superoperator& s, double tol = kPsdTol) {
  const Matrix g = ordinary_adjoint(s).apply_ordinary(Matrix::Identity(s.dim(), s.dim()));
  return max_abs(g - Matrix::Identity(s.dim(), s.dim())) <= tol;
}

/// Orthogonal Kraus decomposition of a CP superoperator: A_alpha =
/// sqrt(lambda_alpha) times the unvec'd Choi eigenvectors.  Eigenvalues below
/// 1e-12 of the largest are discarded; each operator is phase-normalized so
/// its first significantly nonzero entry is real positive.
inline std::vector<Matrix> kraus_from_superop(const Superoperator& s, double tol = kPsdTol) {
  if (!is_completely_positive(s, tol))
    throw NotCP("kraus_from_superop: superoperator is not completely positive");
  const Matrix& lr = s.lr_matrix();
  const HermitianEig eig = eig_hermitian((lr + Matrix(lr.adjoint())) * 0.5, 1e-8);
  const double lambda_max = std::max(eig.eigenvalues(0), 0.0);
  std::vector<Matrix> kraus;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda <= 1e-12 * lambda_max || lambda <= 0.0) continue;
    Matrix a = std::sqrt(lambda) * op_from_coords(eig.eigenvectors.col(i), s.dim());
    // Deterministic phase: first significantly nonzero entry real positive.
    const double scale = max_abs(a);
    for (Eigen::Index r = 0; r < a.rows() && scale > 0.0; ++r) {
      bool done = false;
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        const Complex x = a(r, c);
        if (std::abs(x) > 1e-12 * scale) {
          a *= std::conj(x) / std::abs(x);
          done = true;
          break;
        }
      }
      if (done) break;
    }
    kraus.push_back(std::move(a));
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(s.dim(), s.dim()));
  return kraus;
}

/// Unitary matrix V relating two Kraus decompositions of the same channel,
/// B_beta = sum_alpha V_{beta alpha} A_alpha; the shorter list is padded with
/// zero operators.  Throws NotEquivalent if the induced channels differ.
inline Matrix unitary_relating(std::vector<Matrix> k1, std::vector<Matrix> k2,
                               double tol = 1e-8) {
  if (k1.empty() || k2.empty()) throw DimensionMismatch("unitary_relating: empty list");
  const Eigen::Index d = k1.front().rows();
  const std::size_t n = std::max(k1.size(), k2.size());
  while (k1.size() < n) k1.push_back(Matrix::Zero(d, d));
  while (k2.size() < n) k2.push_back(Matrix::Zero(d, d));

  const Superoperator s1 = Superoperator::from_kraus(k1);
  const Superoperator s2 = Superoperator::from_kraus(k2);
  const double scale = 1.0 + max_abs(s1.lr_matrix());
  if (max_abs(s1.lr_matrix() - s2.lr_matrix()) > tol * scale)
    throw NotEquivalent("unitary_relating: decompositions induce different channels");

  // Express both lists over the orthogonal decomposition of the shared
  // left-right matrix, then stitch the two isometries together.
  const HermitianEig eig = eig_hermitian(
      (s1.lr_matrix() + Matrix(s1.lr_matrix().adjoint())) * 0.5, 1e-8);
  const double lambda_max = std::max(eig.eigenvalues(0), 0.0);
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > std::max(1e-12 * lambda_max, 0.0)) support.push_back(i);

  const auto isometry_for = [&](const std::vector<Matrix>& kraus) {
    Matrix w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(support.size()));
    for (std::size_t a = 0; a < n; ++a) {
      const Vector coords = op_coords(kraus[a]);
      for (std::size_t k = 0; k < support.size(); ++k)
        w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) =
            eig.eigenvectors.col(support[k]).dot(coords) / std::sqrt(eig.eigenvalues(support[k]));
    }
    return w;
  };

  // Complete an n x r isometry to an n x n unitary by orthonormalizing the
  // standard basis against its columns in index order.
  const auto complete = [&](const Matrix& w) {
    Matrix q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::Index filled = w.cols();
    q.leftCols(filled) = w;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n) && filled < q.cols(); ++i) {
      Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
      v(i) = 1.0;
      for (Eigen::Index c = 0; c < filled; ++c) v -= q.col(c) * q.col(c).dot(v);
      for (Eigen::Index c = 0; c < filled; ++c) v -= q.col(c) * q.col(c).dot(v);
      const double nv = v.norm();
      if (nv > 1e-8) {
        q.col(filled++) = v / nv;
      }
    }
    if (filled != q.cols()) throw NoConvergence("unitary_relating: completion failed");
    return q;
  };

  const Matrix v = complete(isometry_for(k2)) * complete(isometry_for(k1)).adjoint();
  return v;
}

}  // namespace qopkit

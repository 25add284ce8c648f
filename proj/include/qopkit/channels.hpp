// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "qopkit/linalg.hpp"
#include "qopkit/superop.hpp"

namespace qopkit {

inline constexpr double kProbTol = 1e-12;

/// A density operator: Hermitian, PSD, unit trace.  Validation is eager.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m) : matrix_(std::move(m)) {
    require_square(matrix_, "DensityOperator");
    require_finite(matrix_, "DensityOperator");
    if (max_abs(matrix_ - matrix_.adjoint()) > 1e-12 * (1.0 + max_abs(matrix_)))
      throw DomainError("DensityOperator: not Hermitian");
    const HermitianEig eig = eig_hermitian(matrix_, 1e-10);
    if (eig.eigenvalues(eig.eigenvalues.size() - 1) < -1e-10)
      throw DomainError("DensityOperator: negative eigenvalue");
    if (std::abs(matrix_.trace() - Complex(1.0)) > 1e-12)
      throw DomainError("DensityOperator: trace is not 1");
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

  static DensityOperator maximally_mixed(Eigen::Index d) {
    return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d));
  }
  static DensityOperator pure(const Vector& psi) {
    const Vector u = psi / psi.norm();
    return DensityOperator(u * u.adjoint());
  }

 private:
  Matrix matrix_;
};

/// A quantum operation as a finite Kraus list, trace-nonincreasing by
/// construction (sum A^dag A <= 1).
class QuantumOperation {
 public:
  explicit QuantumOperation(std::vector<Matrix> kraus, double psd_tol = kPsdTol)
      : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw DimensionMismatch("QuantumOperation: empty Kraus list");
    const Eigen::Index d = kraus_.front().rows();
    for (const Matrix& k : kraus_) {
      require_square(k, "QuantumOperation");
      require_finite(k, "QuantumOperation");
      if (k.rows() != d) throw DimensionMismatch("QuantumOperation: inconsistent dimensions");
    }
    Matrix g = Matrix::Zero(d, d);
    for (const Matrix& k : kraus_) g += k.adjoint() * k;
    if (!psd_order(Matrix::Identity(d, d), (g + Matrix(g.adjoint())) * 0.5, psd_tol))
      throw DomainError("QuantumOperation: sum A^dag A exceeds identity");
  }

  Eigen::Index dim() const { return kraus_.front().rows(); }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Superoperator superoperator() const { return Superoperator::from_kraus(kraus_); }

  /// sum A^dag A, the operator in the trace-decreasing condition; also the
  /// ordinary adjoint applied to the identity.
  Matrix adjoint_of_identity() const {
    Matrix g = Matrix::Zero(dim(), dim());
    for (const Matrix& k : kraus_) g += k.adjoint() * k;
    return g;
  }

  bool trace_preserving(double tol = 1e-10) const {
    return max_abs(adjoint_of_identity() - Matrix::Identity(dim(), dim())) <= tol;
  }

  static QuantumOperation identity(Eigen::Index d) {
    return QuantumOperation({Matrix::Identity(d, d)});
  }

  static QuantumOperation depolarizing(double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("depolarizing: p out of range");
    return QuantumOperation({std::sqrt(1.0 - p) * Matrix::Identity(2, 2),
                             std::sqrt(p / 3.0) * pauli_x(), std::sqrt(p / 3.0) * pauli_y(),
                             std::sqrt(p / 3.0) * pauli_z()});
  }

 private:
  std::vector<Matrix> kraus_;
};

inline Matrix apply_unnormalized(const QuantumOperation& op, const Matrix& rho) {
  if (rho.rows() != op.dim() || rho.cols() != op.dim())
    throw DimensionMismatch("apply_unnormalized: dimension mismatch");
  Matrix out = Matrix::Zero(op.dim(), op.dim());
  for (const Matrix& k : op.kraus()) out += k * rho * k.adjoint();
  return out;
}

/// tr(A(rho)): the probability for the environment observation.
inline double probability(const QuantumOperation& op, const DensityOperator& rho) {
  return apply_unnormalized(op, rho.matrix()).trace().real();
}

inline DensityOperator apply_normalized(const QuantumOperation& op, const DensityOperator& rho) {
  Matrix out = apply_unnormalized(op, rho.matrix());
  const double p = out.trace().real();
  if (p <= kProbTol) throw ZeroProbability("apply_normalized: outcome probability is zero");
  out /= p;
  // Symmetrize away roundoff before the eager density-operator checks.
  return DensityOperator((out + Matrix(out.adjoint())) * 0.5);
}

/// An environment model: system coupled unitarily to an environment, followed
/// by observation of the environment in the subspace spanned by |g_k>.
struct EnvironmentModel {
  Eigen::Index system_dim = 0;
  Eigen::Index env_dim = 0;
  Matrix unitary;                     // (D * D_E) x (D * D_E), system factor major
  Matrix env_state;                   // D_E x D_E, PSD unit trace
  std::vector<Vector> observation;    // orthonormal |g_k>, spanning P^E

  void validate() const {
    if (system_dim <= 0 || env_dim <= 0) throw InvalidModel("EnvironmentModel: bad dimensions");
    const Eigen::Index dd = system_dim * env_dim;
    if (unitary.rows() != dd || unitary.cols() != dd)
      throw InvalidModel("EnvironmentModel: unitary has wrong shape");
    if (max_abs(unitary.adjoint() * unitary - Matrix::Identity(dd, dd)) > 1e-10)
      throw InvalidModel("EnvironmentModel: U is not unitary");
    if (env_state.rows() != env_dim || env_state.cols() != env_dim)
      throw InvalidModel("EnvironmentModel: env state has wrong shape");
    if (std::abs(env_state.trace() - Complex(1.0)) > 1e-12)
      throw InvalidModel("EnvironmentModel: env state trace is not 1");
    if (observation.empty()) throw InvalidModel("EnvironmentModel: empty observation basis");
    for (std::size_t a = 0; a < observation.size(); ++a) {
      if (observation[a].size() != env_dim)
        throw InvalidModel("EnvironmentModel: observation vector has wrong length");
      for (std::size_t b = 0; b <= a; ++b) {
        const Complex g = observation[b].dot(observation[a]);
        const Complex want = (a == b) ? Complex(1.0) : Complex(0.0);
        if (std::abs(g - want) > 1e-10)
          throw InvalidModel("EnvironmentModel: observation basis not orthonormal");
      }
    }
  }

  Matrix env_projector() const {
    Matrix p = Matrix::Zero(env_dim, env_dim);
    for (const Vector& g : observation) p += g * g.adjoint();
    return p;
  }

  /// Direct evaluation of tr_E(P^E U (rho (x) rho_E) U^dag), the unnormalized
  /// post-observation system state.
  Matrix post_state(const Matrix& rho) const {
    const Eigen::Index d = system_dim, e = env_dim;
    Matrix joint = Matrix::Zero(d * e, d * e);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index a = 0; a < e; ++a)
          for (Eigen::Index b = 0; b < e; ++b)
            joint(i * e + a, j * e + b) = rho(i, j) * env_state(a, b);
    const Matrix pe = env_projector();
    Matrix big_pe = Matrix::Zero(d * e, d * e);
    for (Eigen::Index i = 0; i < d; ++i)
      big_pe.block(i * e, i * e, e, e) = pe;
    const Matrix after = big_pe * unitary * joint * unitary.adjoint();
    return partial_trace(after, {d, e}, {0});
  }
};

/// Decomposition operators A_{kl} = sqrt(lambda_l) <g_k| U |phi_l>, ordered
/// lexicographically in (k, l).  Environment eigenvalues below 1e-14 are
/// dropped.
inline QuantumOperation kraus_from_environment(const EnvironmentModel& m) {
  m.validate();
  const Eigen::Index d = m.system_dim, e = m.env_dim;
  const HermitianEig env_eig = eig_hermitian(m.env_state, 1e-10);
  std::vector<Matrix> kraus;
  for (const Vector& g : m.observation) {
    for (Eigen::Index l = 0; l < env_eig.eigenvalues.size(); ++l) {
      const double lambda = env_eig.eigenvalues(l);
      if (lambda <= 1e-14) continue;
      const Vector phi = env_eig.eigenvectors.col(l);
      Matrix a(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
          Complex sum = 0;
          for (Eigen::Index ga = 0; ga < e; ++ga)
            for (Eigen::Index pb = 0; pb < e; ++pb)
              sum += std::conj(g(ga)) * m.unitary(i * e + ga, j * e + pb) * phi(pb);
          a(i, j) = std::sqrt(lambda) * sum;
        }
      kraus.push_back(std::move(a));
    }
  }
  if (kraus.empty()) throw InvalidModel("kraus_from_environment: no decomposition operators");
  return QuantumOperation(std::move(kraus));
}

/// The superoperator A_rho = A o (sqrt(rho) (x) sqrt(rho)) / tr(A(rho)),
/// equivalent under the left-right action to the joint RQ state after the
/// dynamics.
inline Superoperator a_rho(const QuantumOperation& op, const DensityOperator& rho) {
  const double p = probability(op, rho);
  if (p <= kProbTol) throw ZeroProbability("a_rho: tr(A(rho)) is zero");
  const Matrix root = sqrt_psd(rho.matrix());
  std::vector<std::pair<Matrix, Matrix>> pairs;
  pairs.reserve(op.kraus().size());
  const double inv = 1.0 / std::sqrt(p);
  for (const Matrix& k : op.kraus()) {
    Matrix kr = k * root * inv;
    pairs.emplace_back(kr, kr);
  }
  return Superoperator::from_operator_pairs(pairs);
}

/// sigma = A_rho^x(1) = sqrt(rho) A^x(1) sqrt(rho) / tr(A(rho)).
inline DensityOperator sigma_of(const QuantumOperation& op, const DensityOperator& rho) {
  const double p = probability(op, rho);
  if (p <= kProbTol) throw ZeroProbability("sigma_of: tr(A(rho)) is zero");
  const Matrix root = sqrt_psd(rho.matrix());
  Matrix s = root * op.adjoint_of_identity() * root / p;
  return DensityOperator((s + Matrix(s.adjoint())) * 0.5);
}

/// State of the reference system after the dynamics: the transpose of sigma
/// with respect to the frame bases.
inline DensityOperator reference_state_after(const QuantumOperation& op,
                                             const DensityOperator& rho,
                                             const ReferenceFrame& frame) {
  if (frame.dim != op.dim()) throw DimensionMismatch("reference_state_after: frame mismatch");
  Matrix t = sigma_of(op, rho).matrix().transpose();
  return DensityOperator((t + Matrix(t.adjoint())) * 0.5);
}

/// Stinespring dilation of a trace-preserving operation: a unitary coupling
/// to an initially pure-state environment of dimension equal to the Kraus
/// count, with the full environment observed (P^E = 1).
inline EnvironmentModel dilate(const QuantumOperation& op) {
  if (!op.trace_preserving(1e-10))
    throw NotTracePreserving("dilate: operation is not trace preserving");
  const Eigen::Index d = op.dim();
  const Eigen::Index e = static_cast<Eigen::Index>(op.kraus().size());
  const Eigen::Index dd = d * e;

  // Isometry columns: U(|e_j> (x) |phi_0>) = sum_alpha A_alpha|e_j> (x) |alpha>.
  Matrix u = Matrix::Zero(dd, dd);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index alpha = 0; alpha < e; ++alpha)
      for (Eigen::Index i = 0; i < d; ++i)
        u(i * e + alpha, j * e) = op.kraus()[static_cast<std::size_t>(alpha)](i, j);
  }
  // Complete to a unitary: orthonormalize the standard basis against the
  // defined columns in index order.  Two projection passes for stability.
  std::vector<Eigen::Index> defined;
  for (Eigen::Index j = 0; j < d; ++j) defined.push_back(j * e);
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < dd; ++c)
    if (c % e != 0) free_cols.push_back(c);

  std::vector<Eigen::Index> filled = defined;
  std::size_t next_free = 0;
  for (Eigen::Index i = 0; i < dd && next_free < free_cols.size(); ++i) {
    Vector v = Vector::Zero(dd);
    v(i) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c : filled) v -= u.col(c) * u.col(c).dot(v);
    const double nv = v.norm();
    if (nv > 1e-8) {
      const Eigen::Index c = free_cols[next_free++];
      u.col(c) = v / nv;
      filled.push_back(c);
    }
  }
  if (next_free != free_cols.size()) throw NoConvergence("dilate: unitary completion failed");

  EnvironmentModel m;
  m.system_dim = d;
  m.env_dim = e;
  m.unitary = std::move(u);
  Matrix env = Matrix::Zero(e, e);
  env(0, 0) = 1.0;
  m.env_state = std::move(env);
  for (Eigen::Index k = 0; k < e; ++k) {
    Vector g = Vector::Zero(e);
    g(k) = 1.0;
    m.observation.push_back(std::move(g));
  }
  return m;
}

}  // namespace qopkit

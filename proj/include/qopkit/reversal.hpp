// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "qopkit/channels.hpp"
#include "qopkit/linalg.hpp"
#include "qopkit/rng.hpp"
#include "qopkit/superop.hpp"

namespace qopkit {

/// An isometry from a d-dimensional logical space into the D-dimensional
/// physical space, with projector P_C onto its image.
class CodeSubspace {
 public:
  explicit CodeSubspace(Matrix isometry) : isometry_(std::move(isometry)) {
    if (isometry_.cols() <= 0) throw DegenerateCode("CodeSubspace: logical dimension is zero");
    if (isometry_.rows() < isometry_.cols())
      throw DimensionMismatch("CodeSubspace: physical dim below logical dim");
    const Matrix gram = isometry_.adjoint() * isometry_;
    if (max_abs(gram - Matrix::Identity(isometry_.cols(), isometry_.cols())) > 1e-12)
      throw DomainError("CodeSubspace: isometry columns are not orthonormal");
  }

  Eigen::Index physical_dim() const { return isometry_.rows(); }
  Eigen::Index logical_dim() const { return isometry_.cols(); }
  const Matrix& isometry() const { return isometry_; }
  Matrix projector() const { return isometry_ * isometry_.adjoint(); }

  /// The maximally mixed state on C, the default full-support code state.
  DensityOperator uniform_state() const {
    return DensityOperator(projector() / static_cast<double>(logical_dim()));
  }

 private:
  Matrix isometry_;
};

struct ReversibilityReport {
  bool reversible = false;
  double mu_squared = 0.0;
  Matrix m_matrix;           // positive, unit trace when reversible
  double max_violation = 0;  // largest deviation of P_C A_b^dag A_a P_C from mu^2 m_{ab} P_C
};

/// Algebraic reversibility test: A is reversible on C iff every block
/// P_C A_beta^dag A_alpha P_C is the same multiple mu^2 m_{alpha beta} of P_C
/// for some positive unit-trace matrix m.
inline ReversibilityReport check_algebraic_reversibility(const QuantumOperation& op,
                                                         const CodeSubspace& code,
                                                         double tol = 1e-8) {
  if (op.dim() != code.physical_dim())
    throw DimensionMismatch("check_algebraic_reversibility: dimension mismatch");
  const Matrix pc = code.projector();
  const double d = static_cast<double>(code.logical_dim());
  const auto n = static_cast<Eigen::Index>(op.kraus().size());

  Matrix big_m(n, n);  // candidate mu^2 m_{alpha beta}
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      big_m(a, b) = (pc * op.kraus()[static_cast<std::size_t>(b)].adjoint() *
                     op.kraus()[static_cast<std::size_t>(a)] * pc)
                        .trace() /
                    d;

  ReversibilityReport report;
  report.mu_squared = big_m.trace().real();
  if (report.mu_squared <= kProbTol)
    throw ZeroRestriction("check_algebraic_reversibility: restriction to C vanishes");
  report.m_matrix = big_m / report.mu_squared;

  double violation = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const Matrix block = pc * op.kraus()[static_cast<std::size_t>(b)].adjoint() *
                           op.kraus()[static_cast<std::size_t>(a)] * pc;
      violation = std::max(violation, max_abs(block - big_m(a, b) * pc));
    }
  report.max_violation = violation;

  const HermitianEig meig = eig_hermitian(
      (report.m_matrix + Matrix(report.m_matrix.adjoint())) * 0.5, 1e-8);
  const bool m_positive = meig.eigenvalues(meig.eigenvalues.size() - 1) >= -tol;
  const bool m_unit_trace = std::abs(report.m_matrix.trace() - Complex(1.0)) <= tol;
  report.reversible = violation <= tol * static_cast<double>(op.dim()) && m_positive &&
                      m_unit_trace &&
                      max_abs(report.m_matrix - report.m_matrix.adjoint()) <= tol;
  return report;
}

/// Canonical decomposition of a reversible operation: Kraus basis in which
/// the error operators act as scaled unitaries carrying C to mutually
/// orthogonal image subspaces.
struct CanonicalDecomposition {
  std::vector<double> lambdas;          // positive, sum to 1
  std::vector<Matrix> canonical_kraus;  // tilde A_alpha
  std::vector<Matrix> unitaries;        // U_alpha with tilde A_alpha P_C = mu sqrt(lambda) U_alpha P_C
  std::vector<Matrix> image_projectors; // P_alpha = U_alpha P_C U_alpha^dag
  double mu_squared = 0.0;
  Matrix code_projector;
};

inline CanonicalDecomposition canonical_decomposition(const QuantumOperation& op,
                                                      const CodeSubspace& code,
                                                      double tol = 1e-8) {
  const ReversibilityReport report = check_algebraic_reversibility(op, code, tol);
  if (!report.reversible)
    throw NotReversible("canonical_decomposition: operation is not reversible on C");

  // Diagonalize mu^2 m_{ab} = tr(A_a rho A_b^dag) at rho = P_C / d.  With the
  // blockwise condition already verified this is the same matrix as in the
  // report, transposed into (a, b) = tr(A_a rho A_b^dag) order.
  const DensityOperator rho = code.uniform_state();
  const auto n = static_cast<Eigen::Index>(op.kraus().size());
  Matrix g(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      g(a, b) = (op.kraus()[static_cast<std::size_t>(a)] * rho.matrix() *
                 op.kraus()[static_cast<std::size_t>(b)].adjoint())
                    .trace();

  const HermitianEig eig = eig_hermitian((g + Matrix(g.adjoint())) * 0.5, 1e-8);
  CanonicalDecomposition canon;
  canon.mu_squared = report.mu_squared;
  canon.code_projector = code.projector();
  const double mu = std::sqrt(report.mu_squared);

  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues(i) / report.mu_squared;
    if (lambda <= 1e-12) continue;  // irrelevant on C
    Matrix tilde = Matrix::Zero(op.dim(), op.dim());
    // tilde A_i = sum_b conj(W(b, i)) A_b diagonalizes tr(tilde A rho tilde A^dag).
    for (Eigen::Index b = 0; b < n; ++b)
      tilde += std::conj(eig.eigenvectors(b, i)) * op.kraus()[static_cast<std::size_t>(b)];
    const Matrix u = polar_unitary(tilde * canon.code_projector);
    canon.lambdas.push_back(lambda);
    canon.canonical_kraus.push_back(std::move(tilde));
    canon.image_projectors.push_back(u * canon.code_projector * u.adjoint());
    canon.unitaries.push_back(u);
    (void)mu;
  }
  return canon;
}

/// The unique restriction of the reversal to N = direct sum of the image
/// subspaces: R_N has Kraus operators U_alpha^dag P_alpha.
inline QuantumOperation reversal_operation(const CanonicalDecomposition& canon) {
  std::vector<Matrix> kraus;
  kraus.reserve(canon.unitaries.size());
  for (std::size_t a = 0; a < canon.unitaries.size(); ++a)
    kraus.push_back(canon.unitaries[a].adjoint() * canon.image_projectors[a]);
  return QuantumOperation(std::move(kraus));
}

/// Projector onto N = sum of the image subspaces; also R_N^x(1).
inline Matrix image_sum_projector(const CanonicalDecomposition& canon) {
  Matrix p = Matrix::Zero(canon.code_projector.rows(), canon.code_projector.cols());
  for (const Matrix& pa : canon.image_projectors) p += pa;
  return p;
}

/// Verifies R o A_C = mu^2 P_C (x) P_C, returning the max entrywise deviation
/// of the composed left-right matrices.  Also spot-checks R(rho') = rho on
/// random code states.
inline double verify_reversal(const QuantumOperation& r, const QuantumOperation& op,
                              const CodeSubspace& code, double tol = 1e-9,
                              std::uint64_t seed = 20260823) {
  const Matrix pc = code.projector();
  const Superoperator restricted =
      ordinary_compose(op.superoperator(), Superoperator::from_operator_pairs({{pc, pc}}));
  const Superoperator composed = ordinary_compose(r.superoperator(), restricted);

  const double mu2 =
      (pc * op.adjoint_of_identity() * pc).trace().real() / static_cast<double>(code.logical_dim());
  const Superoperator target =
      Superoperator::from_operator_pairs({{pc, pc}}) * Complex(mu2);
  double deviation = max_abs(composed.lr_matrix() - target.lr_matrix());

  // Reversal on random code states per the definition.
  Rng rng(seed);
  for (int trial = 0; trial < 10; ++trial) {
    Vector logical(code.logical_dim());
    for (Eigen::Index i = 0; i < logical.size(); ++i) logical(i) = rng.complex_normal();
    logical /= logical.norm();
    const Vector phys = code.isometry() * logical;
    const Matrix rho = phys * phys.adjoint();
    const Matrix rho_out = apply_unnormalized(op, rho);
    const double p = rho_out.trace().real();
    if (p <= kProbTol) throw ZeroRestriction("verify_reversal: zero-probability code state");
    deviation = std::max(deviation, max_abs(apply_unnormalized(r, rho_out / p) - rho));
  }
  (void)tol;
  return deviation;
}

/// The compact dual construction R_{rho'} = A_rho^x: the ordinary adjoint of
/// A_rho, read against the post-dynamics state by whitening the input with
/// the support inverse square root of rho'.  For a reversible operation and
/// full-support code state rho this recovers the Kraus operators
/// U_alpha^dag P_alpha exactly, agreeing with reversal_operation on N.
inline QuantumOperation reversal_via_adjoint(const QuantumOperation& op,
                                             const DensityOperator& rho, double tol = 1e-8) {
  const Superoperator adjoint = ordinary_adjoint(a_rho(op, rho));

  const Matrix out = apply_unnormalized(op, rho.matrix());
  const double p = out.trace().real();
  const HermitianEig eig = eig_hermitian((Matrix(out / p) + Matrix(out.adjoint() / p)) * 0.5, tol);
  Matrix whiten = Matrix::Zero(op.dim(), op.dim());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > 1e-12)
      whiten += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint() /
                std::sqrt(eig.eigenvalues(i));

  const Superoperator composed =
      ordinary_compose(adjoint, Superoperator::from_operator_pairs({{whiten, whiten}}));
  if (!is_completely_positive(composed, tol))
    throw NotReversible("reversal_via_adjoint: dual construction is not an operation");
  std::vector<Matrix> kraus = kraus_from_superop(composed, tol);
  return QuantumOperation(std::move(kraus), tol);
}

struct InfoConditions {
  bool cond1 = false;       // tr(A(rho)) constant on C
  double mu_squared = 0.0;
  bool cond2 = false;       // S(rho) = S(rho') - S(A_rho)
  double entropy_gap = 0.0; // S(rho') - S_e - S(rho), in bits
};

namespace detail {

inline double entropy_bits(const RealVector& w) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > 1e-15) s -= w(i) * std::log2(w(i));
  return s;
}

inline double von_neumann_entropy_of(const Matrix& rho) {
  return entropy_bits(eig_hermitian((rho + Matrix(rho.adjoint())) * 0.5, 1e-8).eigenvalues);
}

}  // namespace detail

/// The information-theoretic reversibility characterization: constancy of
/// tr(A(rho)) over C plus the entropy identity S(rho) = S(rho') - S(A_rho),
/// evaluated at rho = P_C / d.
inline InfoConditions check_info_conditions(const QuantumOperation& op, const CodeSubspace& code,
                                            double tol = 1e-8, double tol_entropy = 1e-6) {
  const Matrix pc = code.projector();
  const double d = static_cast<double>(code.logical_dim());
  InfoConditions out;

  const Matrix restricted = pc * op.adjoint_of_identity() * pc;
  out.mu_squared = restricted.trace().real() / d;
  if (out.mu_squared <= kProbTol)
    throw ZeroRestriction("check_info_conditions: restriction to C vanishes");
  out.cond1 = max_abs(restricted - out.mu_squared * pc) <= tol * static_cast<double>(op.dim());

  const DensityOperator rho = code.uniform_state();
  const Matrix rho_out = apply_unnormalized(op, rho.matrix());
  const double p = rho_out.trace().real();
  const double s_in = detail::von_neumann_entropy_of(rho.matrix());
  const double s_out = detail::von_neumann_entropy_of(rho_out / p);
  const Matrix arho_lr = a_rho(op, rho).lr_matrix();
  const double s_exchange =
      detail::entropy_bits(eig_hermitian((arho_lr + Matrix(arho_lr.adjoint())) * 0.5, 1e-8)
                               .eigenvalues);
  out.entropy_gap = s_out - s_exchange - s_in;
  out.cond2 = std::abs(out.entropy_gap) <= tol_entropy;
  return out;
}

}  // namespace qopkit

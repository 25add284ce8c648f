// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <tuple>
#include <vector>

#include "qopkit/channels.hpp"
#include "qopkit/linalg.hpp"
#include "qopkit/superop.hpp"

namespace qopkit {

// All entropies are in bits (log base 2); the anti-Fano exponential is
// evaluated base 2 to match.

/// Binary entropy h(x) = -x log2 x - (1-x) log2 (1-x).
inline double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw DomainError("binary_entropy: argument outside [0, 1]");
  double s = 0.0;
  if (x > 1e-15) s -= x * std::log2(x);
  if (1.0 - x > 1e-15) s -= (1.0 - x) * std::log2(1.0 - x);
  return s;
}

inline double von_neumann_entropy(const DensityOperator& rho) {
  const HermitianEig eig = eig_hermitian(rho.matrix(), 1e-10);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double w = eig.eigenvalues(i);
    if (w > 1e-15) s -= w * std::log2(w);
  }
  return s;
}

namespace detail {

inline RealVector arho_spectrum(const QuantumOperation& op, const DensityOperator& rho) {
  const Matrix lr = a_rho(op, rho).lr_matrix();
  return eig_hermitian((lr + Matrix(lr.adjoint())) * 0.5, 1e-8).eigenvalues;
}

}  // namespace detail

/// Entropy exchange S_e = S(A_rho) = -sum lambda log2 lambda, the entropy of
/// the joint RQ state after the dynamics.
inline double entropy_exchange(const QuantumOperation& op, const DensityOperator& rho) {
  const RealVector w = detail::arho_spectrum(op, rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > 1e-15) s -= w(i) * std::log2(w(i));
  return s;
}

/// Entanglement fidelity F_e = (sqrt(rho)| A_rho |sqrt(rho)) = (rho| A |rho),
/// computed as sum_alpha |tr(A_alpha rho)|^2 / tr(A(rho)).
inline double entanglement_fidelity(const QuantumOperation& op, const DensityOperator& rho) {
  const double p = probability(op, rho);
  if (p <= kProbTol) throw ZeroProbability("entanglement_fidelity: tr(A(rho)) is zero");
  double f = 0.0;
  for (const Matrix& k : op.kraus()) f += std::norm((k * rho.matrix()).trace());
  return f / p;
}

/// Quadratic entropy Tr(A_rho^2) = sum lambda^2.
inline double quadratic_entropy(const QuantumOperation& op, const DensityOperator& rho) {
  const Superoperator arho = a_rho(op, rho);
  return lr_multiply(arho, arho).supertrace().real();
}

struct FidelityReport {
  double entanglement_fidelity = 0.0;  // F_e
  double entropy_exchange = 0.0;       // S_e, bits
  double quadratic = 0.0;              // Tr(A_rho^2)
  double lambda1 = 0.0;                // largest A_rho eigenvalue
  double fano_bound = 0.0;             // h(F_e) + (1 - F_e) log2(D^2 - 1) >= S_e
  double quad_fano_bound = 0.0;        // F_e^2 + (1-F_e)^2/(D^2-1) <= Tr(A_rho^2)
  double anti_fano_entropy_bound = 0.0;  // 2^(-2 S_e) <= F_e(A') after correction
  double anti_fano_quad_bound = 0.0;     // (Tr A_rho^2)^2 <= F_e(A') after correction
};

/// Populates the Fano-side quantities and checks both Fano inequalities.
inline FidelityReport fano_check(const QuantumOperation& op, const DensityOperator& rho) {
  FidelityReport r;
  r.entanglement_fidelity = std::clamp(entanglement_fidelity(op, rho), 0.0, 1.0);
  const RealVector w = detail::arho_spectrum(op, rho);
  r.lambda1 = w(0);
  double se = 0.0, quad = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > 1e-15) se -= w(i) * std::log2(w(i));
    quad += w(i) * w(i);
  }
  r.entropy_exchange = se;
  r.quadratic = quad;
  const double dd = static_cast<double>(op.dim() * op.dim());
  r.fano_bound = binary_entropy(r.entanglement_fidelity) +
                 (1.0 - r.entanglement_fidelity) * std::log2(dd - 1.0);
  r.quad_fano_bound = r.entanglement_fidelity * r.entanglement_fidelity +
                      (1.0 - r.entanglement_fidelity) * (1.0 - r.entanglement_fidelity) /
                          (dd - 1.0);
  r.anti_fano_entropy_bound = std::exp2(-2.0 * r.entropy_exchange);
  r.anti_fano_quad_bound = r.quadratic * r.quadratic;
  return r;
}

struct UnitaryCorrection {
  QuantumOperation corrected;  // A' = U^dag (x) U o A
  Matrix correction_unitary;   // U with tau_1 = U sqrt(sigma_1)
  FidelityReport report;       // evaluated for A' where fidelity is concerned
};

/// Unitary correction of a trace-preserving operation: rotates the channel by
/// the unitary in the polar decomposition of the leading A_rho eigen-operator,
/// so that F_e(rho, A') >= lambda_1^2 and both anti-Fano bounds hold.
inline UnitaryCorrection unitary_correction(const QuantumOperation& op,
                                            const DensityOperator& rho) {
  if (!op.trace_preserving(1e-10))
    throw NotTracePreserving("unitary_correction: operation is not trace preserving");

  const Matrix lr = a_rho(op, rho).lr_matrix();
  const HermitianEig eig = eig_hermitian((lr + Matrix(lr.adjoint())) * 0.5, 1e-8);
  const Matrix tau1 = op_from_coords(eig.eigenvectors.col(0), op.dim());
  const Matrix u = polar_unitary(tau1);

  std::vector<Matrix> kraus;
  kraus.reserve(op.kraus().size());
  for (const Matrix& k : op.kraus()) kraus.push_back(u.adjoint() * k);

  UnitaryCorrection out{QuantumOperation(std::move(kraus)), u, {}};
  out.report = fano_check(op, rho);
  out.report.entanglement_fidelity = entanglement_fidelity(out.corrected, rho);
  return out;
}

}  // namespace qopkit

// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

// Test-only generators for random operators, channels and codes.

#pragma once

#include <utility>
#include <vector>

#include "qopkit/channels.hpp"
#include "qopkit/linalg.hpp"
#include "qopkit/reversal.hpp"
#include "qopkit/rng.hpp"
#include "qopkit/superop.hpp"

namespace qopkit::testing {

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.complex_normal();
  return m;
}

inline Matrix random_hermitian(Eigen::Index d, Rng& rng) {
  const Matrix g = random_matrix(d, d, rng);
  return (g + Matrix(g.adjoint())) * 0.5;
}

inline Matrix random_psd(Eigen::Index d, Rng& rng) {
  const Matrix g = random_matrix(d, d, rng);
  return g.adjoint() * g;
}

inline Matrix random_unitary(Eigen::Index d, Rng& rng) {
  return polar_unitary(random_matrix(d, d, rng));
}

inline DensityOperator random_density(Eigen::Index d, Rng& rng) {
  Matrix p = random_psd(d, rng);
  p /= p.trace().real();
  return DensityOperator((p + Matrix(p.adjoint())) * 0.5);
}

/// Random trace-preserving operation with `n` Kraus operators.
inline QuantumOperation random_tp_operation(Eigen::Index d, int n, Rng& rng) {
  std::vector<Matrix> raw;
  Matrix g = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    raw.push_back(random_matrix(d, d, rng));
    g += raw.back().adjoint() * raw.back();
  }
  // Whiten: A_i = G_i * G^{-1/2} gives sum A^dag A = 1.
  const HermitianEig eig = eig_hermitian(g, 1e-8);
  Matrix inv_root = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    inv_root += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint() /
                std::sqrt(eig.eigenvalues(i));
  std::vector<Matrix> kraus;
  for (Matrix& r : raw) kraus.push_back(r * inv_root);
  return QuantumOperation(std::move(kraus));
}

/// Random trace-nonincreasing (generally trace-decreasing) operation.
inline QuantumOperation random_operation(Eigen::Index d, int n, Rng& rng) {
  std::vector<Matrix> kraus;
  Matrix g = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    kraus.push_back(random_matrix(d, d, rng));
    g += kraus.back().adjoint() * kraus.back();
  }
  const double scale = std::sqrt(eig_hermitian(g, 1e-8).eigenvalues(0)) * (1.0 + rng.uniform());
  for (Matrix& k : kraus) k /= scale;
  return QuantumOperation(std::move(kraus));
}

/// Random CP superoperator (not normalized in any way).
inline Superoperator random_cp_superop(Eigen::Index d, int n, Rng& rng) {
  std::vector<Matrix> kraus;
  for (int i = 0; i < n; ++i) kraus.push_back(random_matrix(d, d, rng) / std::sqrt(double(d)));
  return Superoperator::from_kraus(kraus);
}

inline CodeSubspace random_code(Eigen::Index physical, Eigen::Index logical, Rng& rng) {
  const Matrix u = random_unitary(physical, rng);
  return CodeSubspace(u.leftCols(logical));
}

/// Reversible construction: unitaries carrying C to mutually orthogonal image
/// subspaces, with random weights; optionally rotated by a random Kraus-index
/// unitary (unitary freedom keeps the channel the same).
inline std::pair<QuantumOperation, CodeSubspace> random_reversible_pair(Eigen::Index physical,
                                                                        Eigen::Index logical,
                                                                        int blocks, Rng& rng,
                                                                        bool rotate_kraus = true) {
  if (blocks * logical > physical) throw DomainError("random_reversible_pair: blocks too large");
  const Matrix w = random_unitary(physical, rng);
  const CodeSubspace code(w.leftCols(logical));

  // U_alpha maps the code basis onto block alpha of a second random frame.
  const Matrix frame = random_unitary(physical, rng);
  std::vector<double> weights(static_cast<std::size_t>(blocks));
  double total = 0.0;
  for (double& x : weights) {
    x = 0.1 + rng.uniform();
    total += x;
  }
  std::vector<Matrix> kraus;
  for (int a = 0; a < blocks; ++a) {
    // Isometry from C to block a, completed to a unitary on the orthogonal
    // complements (any completion works; the Kraus only acts through P_C).
    Matrix u = frame.middleCols(a * logical, logical) * code.isometry().adjoint();
    // Complete: map the complement of C onto the complement of the block.
    std::vector<Eigen::Index> rest_src, rest_dst;
    for (Eigen::Index c = logical; c < physical; ++c) rest_src.push_back(c);
    Eigen::Index dst = 0;
    for (Eigen::Index c = 0; c < physical; ++c) {
      const bool in_block = c >= a * logical && c < (a + 1) * logical;
      if (!in_block) rest_dst.push_back(c);
    }
    for (std::size_t i = 0; i < rest_src.size(); ++i)
      u += frame.col(rest_dst[i]) * w.col(rest_src[i]).adjoint();
    (void)dst;
    kraus.push_back(std::sqrt(weights[static_cast<std::size_t>(a)] / total) * u);
  }
  if (rotate_kraus && blocks > 1) {
    const Matrix v = random_unitary(blocks, rng);
    std::vector<Matrix> rotated(kraus.size(), Matrix::Zero(physical, physical));
    for (int b = 0; b < blocks; ++b)
      for (int a = 0; a < blocks; ++a)
        rotated[static_cast<std::size_t>(b)] += v(b, a) * kraus[static_cast<std::size_t>(a)];
    kraus = std::move(rotated);
  }
  return {QuantumOperation(std::move(kraus)), code};
}

}  // namespace qopkit::testing

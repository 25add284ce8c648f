// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "qopkit/channels.hpp"
#include "qopkit/rng.hpp"
#include "support.hpp"

using namespace qopkit;
using testing::random_density;
using testing::random_matrix;
using testing::random_operation;
using testing::random_psd;
using testing::random_tp_operation;
using testing::random_unitary;

TEST_CASE("DensityOperator validates eagerly") {
  CHECK_NOTHROW(DensityOperator::maximally_mixed(4));
  Vector psi(2);
  psi << 3.0, 4.0;
  const DensityOperator pure = DensityOperator::pure(psi);
  CHECK(pure.matrix()(0, 0).real() == Catch::Approx(0.36));
  CHECK(pure.matrix()(1, 1).real() == Catch::Approx(0.64));

  CHECK_THROWS_AS(DensityOperator(2.0 * Matrix::Identity(2, 2)), DomainError);  // trace 4
  Matrix nh = Matrix::Identity(2, 2) * 0.5;
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(DensityOperator(nh), DomainError);  // not Hermitian
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator(neg), DomainError);  // negative eigenvalue
}

TEST_CASE("QuantumOperation enforces the trace-nonincreasing condition") {
  CHECK_NOTHROW(QuantumOperation({pauli_x()}));
  CHECK_NOTHROW(QuantumOperation({0.5 * Matrix::Identity(3, 3)}));
  CHECK_THROWS_AS(QuantumOperation({1.5 * Matrix::Identity(2, 2)}), DomainError);
  CHECK_THROWS_AS(QuantumOperation(std::vector<Matrix>{}), DimensionMismatch);

  const QuantumOperation dep = QuantumOperation::depolarizing(0.3);
  CHECK(dep.trace_preserving());
  CHECK(max_abs(dep.adjoint_of_identity() - Matrix::Identity(2, 2)) <= 1e-12);

  Matrix proj = Matrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  CHECK_FALSE(QuantumOperation({proj}).trace_preserving());
}

TEST_CASE("apply, probability and normalization") {
  const DensityOperator rho = DensityOperator::pure(Vector::Unit(2, 0));
  const QuantumOperation dep = QuantumOperation::depolarizing(0.75);
  const Matrix out = apply_unnormalized(dep, rho.matrix());
  CHECK(max_abs(out - Matrix::Identity(2, 2) * 0.5) <= 1e-12);  // fully depolarized
  CHECK(probability(dep, rho) == Catch::Approx(1.0));

  Matrix proj = Matrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  const QuantumOperation meas({proj});
  CHECK(probability(meas, DensityOperator::maximally_mixed(2)) == Catch::Approx(0.5));
  const DensityOperator post = apply_normalized(meas, DensityOperator::maximally_mixed(2));
  CHECK(post.matrix()(0, 0).real() == Catch::Approx(1.0));

  // Zero-probability outcome.
  Matrix kill = Matrix::Zero(2, 2);
  kill(0, 1) = 1.0;
  CHECK_THROWS_AS(apply_normalized(QuantumOperation({kill}), DensityOperator::pure(Vector::Unit(2, 0))),
                  ZeroProbability);
}

TEST_CASE("kraus_from_environment on the controlled-NOT dephasing model") {
  // System controls a NOT on a pure |0> environment; observing the
  // environment in the standard basis gives the dephasing Kraus pair
  // {|0><0|, |1><1|}.
  EnvironmentModel m;
  m.system_dim = 2;
  m.env_dim = 2;
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;  // |0,0> -> |0,0>
  u(1, 1) = 1.0;  // |0,1> -> |0,1>
  u(3, 2) = 1.0;  // |1,0> -> |1,1>
  u(2, 3) = 1.0;  // |1,1> -> |1,0>
  m.unitary = u;
  m.env_state = Matrix::Zero(2, 2);
  m.env_state(0, 0) = 1.0;
  m.observation = {Vector::Unit(2, 0), Vector::Unit(2, 1)};

  const QuantumOperation op = kraus_from_environment(m);
  REQUIRE(op.kraus().size() == 2);
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  CHECK(max_abs(op.kraus()[0] - p0) <= 1e-12);
  CHECK(max_abs(op.kraus()[1] - p1) <= 1e-12);
  CHECK(op.trace_preserving());
}

TEST_CASE("kraus_from_environment agrees with the direct post-state") {
  Rng rng(314);
  for (int trial = 0; trial < 8; ++trial) {
    EnvironmentModel m;
    m.system_dim = 2 + trial % 2;
    m.env_dim = 3;
    m.unitary = random_unitary(m.system_dim * m.env_dim, rng);
    Matrix env = random_psd(3, rng);
    env /= env.trace().real();
    m.env_state = (env + Matrix(env.adjoint())) * 0.5;
    const Matrix frame = random_unitary(3, rng);
    // Partial observation: only two of the three basis vectors.
    m.observation = {frame.col(0), frame.col(1)};
    m.validate();

    const QuantumOperation op = kraus_from_environment(m);
    const DensityOperator rho = random_density(m.system_dim, rng);
    const Matrix via_kraus = apply_unnormalized(op, rho.matrix());
    const Matrix direct = m.post_state(rho.matrix());
    CHECK(max_abs(via_kraus - direct) <= 1e-10);
    // Partial observation is generally trace decreasing but never increasing.
    CHECK(via_kraus.trace().real() <= 1.0 + 1e-10);
  }
}

TEST_CASE("EnvironmentModel validation rejects malformed models") {
  EnvironmentModel m;
  m.system_dim = 2;
  m.env_dim = 2;
  m.unitary = Matrix::Identity(4, 4) * 2.0;  // not unitary
  m.env_state = Matrix::Identity(2, 2) * 0.5;
  m.observation = {Vector::Unit(2, 0)};
  CHECK_THROWS_AS(m.validate(), InvalidModel);
  m.unitary = Matrix::Identity(4, 4);
  CHECK_NOTHROW(m.validate());
  m.observation = {Vector::Unit(2, 0), Vector::Unit(2, 0)};  // not orthonormal
  CHECK_THROWS_AS(m.validate(), InvalidModel);
}

TEST_CASE("a_rho spectrum for the depolarizing channel at the mixed state") {
  const double p = 0.2;
  const QuantumOperation dep = QuantumOperation::depolarizing(p);
  const Superoperator arho = a_rho(dep, DensityOperator::maximally_mixed(2));
  const HermitianEig eig = eig_hermitian(arho.lr_matrix(), 1e-8);
  CHECK(eig.eigenvalues(0) == Catch::Approx(1.0 - p));
  for (int i = 1; i < 4; ++i) CHECK(eig.eigenvalues(i) == Catch::Approx(p / 3.0));
  CHECK(arho.lr_matrix().trace().real() == Catch::Approx(1.0));
}

TEST_CASE("a_rho has unit supertrace for any operation") {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const QuantumOperation op = random_operation(3, 4, rng);
    const DensityOperator rho = random_density(3, rng);
    const Superoperator arho = a_rho(op, rho);
    CHECK(arho.supertrace().real() == Catch::Approx(1.0));
    CHECK(is_completely_positive(arho));
  }
}

TEST_CASE("sigma is rho for a trace-preserving operation") {
  Rng rng(66);
  const QuantumOperation op = random_tp_operation(3, 3, rng);
  const DensityOperator rho = random_density(3, rng);
  CHECK(max_abs(sigma_of(op, rho).matrix() - rho.matrix()) <= 1e-10);

  // Reference state after the dynamics is the transpose.
  const ReferenceFrame frame(3);
  CHECK(max_abs(reference_state_after(op, rho, frame).matrix() -
                Matrix(rho.matrix().transpose())) <= 1e-10);
}

TEST_CASE("sigma for a projective operation") {
  Matrix proj = Matrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  const QuantumOperation meas({proj});
  const DensityOperator rho = DensityOperator::maximally_mixed(2);
  // sigma = sqrt(rho) P sqrt(rho) / p = (P/2) / (1/2) = P.
  CHECK(max_abs(sigma_of(meas, rho).matrix() - proj) <= 1e-12);
}

TEST_CASE("dilate produces a consistent environment model") {
  Rng rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const QuantumOperation op = random_tp_operation(d, 3, rng);
    const EnvironmentModel m = dilate(op);
    CHECK_NOTHROW(m.validate());
    CHECK(m.system_dim == d);
    CHECK(m.env_dim == 3);

    const QuantumOperation recovered = kraus_from_environment(m);
    CHECK(max_abs(recovered.superoperator().lr_matrix() - op.superoperator().lr_matrix()) <=
          1e-10);
    const DensityOperator rho = random_density(d, rng);
    CHECK(max_abs(m.post_state(rho.matrix()) - apply_unnormalized(op, rho.matrix())) <= 1e-10);
  }
}

TEST_CASE("dilate rejects trace-decreasing operations") {
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(dilate(QuantumOperation({half})), NotTracePreserving);
}

// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "qopkit/superop.hpp"
#include "support.hpp"

using namespace qopkit;
using testing::random_cp_superop;
using testing::random_matrix;
using testing::random_unitary;

namespace {

Matrix ket(int i, int d) {
  Matrix m = Matrix::Zero(d, d);
  m(i, i) = 1.0;
  return m;
}

Superoperator dephasing2() {
  return Superoperator::from_operator_pairs({{ket(0, 2), ket(0, 2)}, {ket(1, 2), ket(1, 2)}});
}

}  // namespace

TEST_CASE("identity pair: ordinary action is identity, left-right is |1)(1|") {
  const Superoperator s = Superoperator::identity_ordinary(2);
  Rng rng(3);
  const Matrix a = random_matrix(2, 2, rng);
  CHECK(max_abs(s.apply_ordinary(a) - a) <= 1e-14);
  // Left-right action of 1 (x) 1: A -> tr(A) * 1.
  CHECK(max_abs(s.apply_leftright(pauli_x())) <= 1e-14);
  CHECK(max_abs(s.apply_leftright(Matrix::Identity(2, 2)) - 2.0 * Matrix::Identity(2, 2)) <=
        1e-14);
}

TEST_CASE("sigma_x pair acts by conjugation") {
  const Superoperator s = Superoperator::from_operator_pairs({{pauli_x(), pauli_x()}});
  CHECK(max_abs(s.apply_ordinary(ket(0, 2)) - ket(1, 2)) <= 1e-14);
  Rng rng(4);
  const Matrix a = random_matrix(2, 2, rng);
  CHECK(max_abs(s.apply_ordinary(a) - pauli_x() * a * pauli_x()) <= 1e-13);
}

TEST_CASE("dephasing pairs give a diagonal left-right matrix") {
  const Superoperator s = dephasing2();
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 1.0;  // alpha = beta = composite 00
  expect(3, 3) = 1.0;  // alpha = beta = composite 11
  CHECK(max_abs(s.lr_matrix() - expect) <= 1e-14);
  CHECK(max_abs(s.apply_ordinary(pauli_x())) <= 1e-14);
}

TEST_CASE("left-right identity superoperator acts as identity") {
  const Superoperator s = Superoperator::identity_leftright(3);
  Rng rng(5);
  const Matrix a = random_matrix(3, 3, rng);
  CHECK(max_abs(s.apply_leftright(a) - a) <= 1e-14);
}

TEST_CASE("matrix elements match the ordinary action on the operator basis") {
  // Eq. relating the two actions: S_{lj,mk} = <e_l| S(|e_j><e_k|) |e_m>.
  Rng rng(6);
  const Superoperator s = random_cp_superop(3, 2, rng);
  const int d = 3;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      Matrix tau = Matrix::Zero(d, d);
      tau(j, k) = 1.0;
      const Matrix image = s.apply_ordinary(tau);
      for (int l = 0; l < d; ++l)
        for (int m = 0; m < d; ++m)
          CHECK(std::abs(s.lr_matrix()(l * d + j, m * d + k) - image(l, m)) <= 1e-12);
    }
}

TEST_CASE("composition and multiplication") {
  const Superoperator id = Superoperator::identity_ordinary(2);
  const Superoperator flip = Superoperator::from_operator_pairs({{pauli_x(), pauli_x()}});
  CHECK(max_abs(ordinary_compose(id, id).lr_matrix() - id.lr_matrix()) <= 1e-14);
  CHECK(max_abs(ordinary_compose(flip, flip).lr_matrix() - id.lr_matrix()) <= 1e-13);

  Rng rng(8);
  const Superoperator s = random_cp_superop(2, 2, rng);
  const Superoperator t = random_cp_superop(2, 3, rng);
  const Superoperator c = ordinary_compose(t, s);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      Matrix tau = Matrix::Zero(2, 2);
      tau(j, k) = 1.0;
      CHECK(max_abs(c.apply_ordinary(tau) - t.apply_ordinary(s.apply_ordinary(tau))) <= 1e-12);
    }
  CHECK(max_abs(lr_multiply(t, s).lr_matrix() - t.lr_matrix() * s.lr_matrix()) <= 1e-14);
}

TEST_CASE("adjoints") {
  // Hermitian Kraus: the channel is its own ordinary adjoint.
  const Superoperator flip = Superoperator::from_operator_pairs({{pauli_x(), pauli_x()}});
  CHECK(max_abs(ordinary_adjoint(flip).lr_matrix() - flip.lr_matrix()) <= 1e-14);

  Rng rng(9);
  const Matrix l = random_matrix(3, 3, rng), r = random_matrix(3, 3, rng);
  const Superoperator s = Superoperator::from_operator_pairs({{l, r}});
  const Superoperator sx = ordinary_adjoint(s);
  const Superoperator expected =
      Superoperator::from_operator_pairs({{Matrix(l.adjoint()), Matrix(r.adjoint())}});
  CHECK(max_abs(sx.lr_matrix() - expected.lr_matrix()) <= 1e-12);

  // Trace-pairing identity tr([S^x(B)]^dag A) = tr(B^dag S(A)).
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
    const Complex lhs = (sx.apply_ordinary(b).adjoint() * a).trace();
    const Complex rhs = (b.adjoint() * s.apply_ordinary(a)).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }

  CHECK(max_abs(lr_adjoint(lr_adjoint(s)).lr_matrix() - s.lr_matrix()) <= 1e-14);
}

TEST_CASE("vec and unvec") {
  const ReferenceFrame frame(2);
  CHECK(max_abs(vec(Matrix::Identity(2, 2), frame) - frame.psi()) <= 1e-14);
  CHECK(frame.psi().squaredNorm() == Catch::Approx(2.0));

  // vec(sqrt(rho)) purifies rho.
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.25;
  rho(1, 1) = 0.75;
  const Vector phi = vec(sqrt_psd(rho), frame);
  CHECK(max_abs(partial_trace(phi * phi.adjoint(), {2, 2}, {1}) - rho) <= 1e-12);

  Rng rng(10);
  const ReferenceFrame f3(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
    const Complex lhs = vec(a, f3).dot(vec(b, f3));
    const Complex rhs = (a.adjoint() * b).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(rhs)));
    CHECK(max_abs(unvec(vec(a, f3), f3) - a) <= 1e-14);
  }
}

TEST_CASE("Choi operator") {
  const ReferenceFrame frame(2);
  const Superoperator id = Superoperator::identity_ordinary(2);
  const Vector psi = frame.psi();
  CHECK(max_abs(choi_of(id, frame) - psi * psi.adjoint()) <= 1e-14);

  Matrix expect = Matrix::Zero(4, 4);  // sum_j |f_j, e_j><f_j, e_j|
  expect(0, 0) = 1.0;
  expect(3, 3) = 1.0;
  CHECK(max_abs(choi_of(dephasing2(), frame) - expect) <= 1e-14);

  Rng rng(12);
  const Superoperator s = random_cp_superop(3, 3, rng);
  const ReferenceFrame f3(3);
  const Superoperator back = superop_of_choi(choi_of(s, f3), f3);
  CHECK(max_abs(back.lr_matrix() - s.lr_matrix()) == 0.0);  // pure index reshuffle

  // Matrix-element equivalence: <Phi_A| Choi(S) |Phi_B> = (A|S|B).
  const Matrix c = choi_of(s, f3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
    const Complex lhs = vec(a, f3).dot(c * vec(b, f3));
    const Complex rhs = op_coords(a).dot(s.lr_matrix() * op_coords(b));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("complete positivity and trace conditions") {
  const Superoperator id = Superoperator::identity_ordinary(2);
  CHECK(is_completely_positive(id));
  CHECK(is_trace_preserving(id));
  CHECK(is_trace_nonincreasing(id));

  // Transpose map, built from its action on the basis: positive but not
  // completely positive.
  Matrix lr(4, 4);
  for (int l = 0; l < 2; ++l)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int k = 0; k < 2; ++k)
          lr(l * 2 + j, m * 2 + k) = (l == k && m == j) ? 1.0 : 0.0;
  const Superoperator transpose(2, lr);
  const Matrix a = [&] {
    Rng rng(14);
    return random_matrix(2, 2, rng);
  }();
  CHECK(max_abs(transpose.apply_ordinary(a) - a.transpose()) <= 1e-13);
  CHECK_FALSE(is_completely_positive(transpose));
  const HermitianEig eig = eig_hermitian(transpose.lr_matrix());
  CHECK(eig.eigenvalues(3) == Catch::Approx(-1.0));
  CHECK(is_trace_preserving(transpose));

  // Lone projector Kraus: CP, trace-decreasing.
  const Superoperator proj = Superoperator::from_kraus({[] {
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1.0;
    return p;
  }()});
  CHECK(is_completely_positive(proj));
  CHECK(is_trace_nonincreasing(proj));
  CHECK_FALSE(is_trace_preserving(proj));
}

TEST_CASE("Kraus extraction") {
  const ReferenceFrame frame(2);
  const Superoperator id = Superoperator::identity_ordinary(2);
  const auto kraus_id = kraus_from_superop(id);
  REQUIRE(kraus_id.size() == 1);
  CHECK(max_abs(kraus_id[0] - Matrix::Identity(2, 2)) <= 1e-10);

  const auto kraus_deph = kraus_from_superop(dephasing2());
  REQUIRE(kraus_deph.size() == 2);
  const Superoperator back = Superoperator::from_kraus(kraus_deph);
  CHECK(max_abs(back.lr_matrix() - dephasing2().lr_matrix()) <= 1e-10);

  Rng rng(15);
  const Matrix u = random_unitary(3, rng);
  const auto kraus_u = kraus_from_superop(Superoperator::from_kraus({u}));
  REQUIRE(kraus_u.size() == 1);
  // Recovered up to a global phase, which the extraction pins deterministically.
  const Complex phase = (kraus_u[0].adjoint() * u).trace() / 3.0;
  CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-10);
  CHECK(max_abs(kraus_u[0] * phase - u) <= 1e-10);

  CHECK_THROWS_AS(kraus_from_superop(Superoperator(2, -Matrix::Identity(4, 4))), NotCP);
}

TEST_CASE("Kraus round-trip on random CP superoperators") {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(3));
    const Superoperator s = random_cp_superop(d, 1 + static_cast<int>(rng.below(4)), rng);
    const Superoperator back = Superoperator::from_kraus(kraus_from_superop(s));
    CHECK(max_abs(back.lr_matrix() - s.lr_matrix()) <= 1e-10 * (1.0 + max_abs(s.lr_matrix())));
  }
}

TEST_CASE("unitary freedom of Kraus decompositions") {
  // Dephasing: projector decomposition vs {1/sqrt2, sigma_z/sqrt2}.
  const std::vector<Matrix> k1 = {ket(0, 2), ket(1, 2)};
  const std::vector<Matrix> k2 = {Matrix::Identity(2, 2) / std::sqrt(2.0),
                                  pauli_z() / std::sqrt(2.0)};
  const Matrix v = unitary_relating(k1, k2);
  CHECK(max_abs(v.adjoint() * v - Matrix::Identity(2, 2)) <= 1e-10);
  for (std::size_t b = 0; b < k2.size(); ++b) {
    Matrix rebuilt = Matrix::Zero(2, 2);
    for (std::size_t a = 0; a < k1.size(); ++a) rebuilt += v(b, a) * k1[a];
    CHECK(max_abs(rebuilt - k2[b]) <= 1e-10);
  }
  Matrix expect(2, 2);
  expect << 1, 1, 1, -1;
  expect /= std::sqrt(2.0);
  // V is determined up to the Gram structure; for this nondegenerate case it
  // matches the hand-derived Hadamard up to per-column phases absorbed above.

  // Identical lists relate via some unitary satisfying the relation.
  const Matrix v_same = unitary_relating(k1, k1);
  for (std::size_t b = 0; b < k1.size(); ++b) {
    Matrix rebuilt = Matrix::Zero(2, 2);
    for (std::size_t a = 0; a < k1.size(); ++a) rebuilt += v_same(b, a) * k1[a];
    CHECK(max_abs(rebuilt - k1[b]) <= 1e-10);
  }

  CHECK_THROWS_AS(unitary_relating({Matrix::Identity(2, 2)}, {pauli_x()}), NotEquivalent);
}

TEST_CASE("unitary freedom on random decompositions of random channels") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(2));
    const int n = 2 + static_cast<int>(rng.below(2));
    const Superoperator s = random_cp_superop(d, n, rng);
    const std::vector<Matrix> k1 = kraus_from_superop(s);
    // Second decomposition: rotate by a random unitary on Kraus indices.
    const auto m = static_cast<int>(k1.size());
    const Matrix w = random_unitary(m, rng);
    std::vector<Matrix> k2(k1.size(), Matrix::Zero(d, d));
    for (int b = 0; b < m; ++b)
      for (int a = 0; a < m; ++a) k2[static_cast<std::size_t>(b)] += w(b, a) * k1[static_cast<std::size_t>(a)];
    const Matrix v = unitary_relating(k1, k2);
    CHECK(max_abs(v.adjoint() * v - Matrix::Identity(m, m)) <= 1e-10);
    for (int b = 0; b < m; ++b) {
      Matrix rebuilt = Matrix::Zero(d, d);
      for (int a = 0; a < m; ++a) rebuilt += v(b, a) * k1[static_cast<std::size_t>(a)];
      CHECK(max_abs(rebuilt - k2[static_cast<std::size_t>(b)]) <= 1e-9);
    }
  }
}

TEST_CASE("superoperator trace") {
  CHECK(Superoperator::identity_ordinary(2).supertrace().real() == Catch::Approx(2.0));
  CHECK(std::abs(Superoperator::zero(3).supertrace()) == 0.0);
  Rng rng(18);
  for (int trial = 0; trial < 5; ++trial) {
    const Superoperator s = random_cp_superop(3, 2, rng);
    const Complex via_lr = s.supertrace();
    const Complex via_action = s.apply_ordinary(Matrix::Identity(3, 3)).trace();
    CHECK(std::abs(via_lr - via_action) <= 1e-12 * (1.0 + std::abs(via_action)));
  }
}

// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "qopkit/channels.hpp"
#include "qopkit/linalg.hpp"
#include "qopkit/rng.hpp"

namespace qopkit {
namespace shor {

inline constexpr Eigen::Index kNineDim = 512;  // qubit 1 most significant

struct LogicalQubit {
  Complex alpha;
  Complex beta;

  LogicalQubit(Complex a, Complex b) : alpha(a), beta(b) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
      throw DomainError("LogicalQubit: amplitudes are not normalized");
  }
};

inline double logical_fidelity(const LogicalQubit& a, const LogicalQubit& b) {
  return std::abs(std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta);
}

enum class ErrorKind { I, X, Z, YPrime };  // YPrime = -i sigma_y = sigma_x sigma_z

struct ErrorSpec {
  int qubit = 1;  // 1..9
  ErrorKind kind = ErrorKind::I;
};

inline Matrix error_matrix(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::I: return Matrix::Identity(2, 2);
    case ErrorKind::X: return pauli_x();
    case ErrorKind::Z: return pauli_z();
    case ErrorKind::YPrime: return pauli_y_prime();
  }
  throw DomainError("error_matrix: bad kind");
}

/// The eight up/down triplet states: index 0 |up>, 1 |down>, 1+i |up_i>,
/// 4+i |down_i> for i = 1..3.
inline std::array<Vector, 8> triplet_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  std::array<Vector, 8> basis;
  for (auto& v : basis) v = Vector::Zero(8);
  basis[0](0) = s;  // |up> = (|000> + |111>)/sqrt(2)
  basis[0](7) = s;
  basis[1](0) = s;  // |down> = (|000> - |111>)/sqrt(2)
  basis[1](7) = -s;
  for (int i = 1; i <= 3; ++i) {
    const int flip = 1 << (3 - i);  // qubit i of the triplet, most significant first
    basis[1 + i](0 ^ flip) = s;  // |up_i>
    basis[1 + i](7 ^ flip) = s;
    basis[4 + i](0 ^ flip) = s;  // |down_i>
    basis[4 + i](7 ^ flip) = -s;
  }
  return basis;
}

inline const char* triplet_label(int index) {
  static const char* names[8] = {"u", "d", "u1", "u2", "u3", "d1", "d2", "d3"};
  return names[index];
}

namespace detail {

inline Vector tensor3(const Vector& a, const Vector& b, const Vector& c) {
  Vector out(a.size() * b.size() * c.size());
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j)
      for (Eigen::Index k = 0; k < c.size(); ++k) out(idx++) = a(i) * b(j) * c(k);
  return out;
}

}  // namespace detail

/// |0>_L = |up up up>, |1>_L = |down down down>.
inline Vector logical_zero() {
  const auto t = triplet_basis();
  return detail::tensor3(t[0], t[0], t[0]);
}
inline Vector logical_one() {
  const auto t = triplet_basis();
  return detail::tensor3(t[1], t[1], t[1]);
}

inline Vector encode(const LogicalQubit& q) {
  return q.alpha * logical_zero() + q.beta * logical_one();
}

/// Applies a single-qubit operator at position `qubit` (1..9, qubit 1 most
/// significant) to a nine-qubit state.
inline Vector apply_single_qubit(const Vector& s, const Matrix& op, int qubit) {
  if (s.size() != kNineDim) throw DimensionMismatch("apply_single_qubit: not a nine-qubit state");
  if (qubit < 1 || qubit > 9) throw IndexOutOfRange("apply_single_qubit: qubit index out of range");
  const int bit = 9 - qubit;
  const Eigen::Index mask = Eigen::Index(1) << bit;
  Vector out(kNineDim);
  for (Eigen::Index idx = 0; idx < kNineDim; ++idx) {
    const int b = (idx & mask) ? 1 : 0;
    out(idx) = op(b, 0) * s(idx & ~mask) + op(b, 1) * s(idx | mask);
  }
  return out;
}

inline Vector apply_error(const Vector& s, const ErrorSpec& e) {
  if (e.kind == ErrorKind::I) return s;
  return apply_single_qubit(s, error_matrix(e.kind), e.qubit);
}

// ---------------------------------------------------------------------------
// Syndrome classes: the code subspace plus 21 orthogonal error subspaces.
// The three phase flips within a triplet act identically on the code (the
// code is degenerate) and are merged into one class.
// ---------------------------------------------------------------------------

struct SyndromeClass {
  int id = 0;
  ErrorSpec representative;         // identity for class 0
  std::vector<ErrorSpec> members;   // errors sharing this class
  Vector basis_zero;                // representative error applied to |0>_L
  Vector basis_one;
};

inline const std::vector<SyndromeClass>& syndrome_classes() {
  static const std::vector<SyndromeClass> classes = [] {
    std::vector<SyndromeClass> out;
    const Vector zero = logical_zero();
    const Vector one = logical_one();
    const auto push = [&](int id, ErrorSpec rep, std::vector<ErrorSpec> members) {
      SyndromeClass c;
      c.id = id;
      c.representative = rep;
      c.members = std::move(members);
      c.basis_zero = apply_error(zero, rep);
      c.basis_one = apply_error(one, rep);
      out.push_back(std::move(c));
    };
    push(0, {1, ErrorKind::I}, {{1, ErrorKind::I}});
    for (int q = 1; q <= 9; ++q)
      push(q, {q, ErrorKind::X}, {{q, ErrorKind::X}});
    for (int t = 0; t < 3; ++t) {
      std::vector<ErrorSpec> members;
      for (int i = 1; i <= 3; ++i) members.push_back({3 * t + i, ErrorKind::Z});
      push(10 + t, {3 * t + 1, ErrorKind::Z}, std::move(members));
    }
    for (int q = 1; q <= 9; ++q)
      push(12 + q, {q, ErrorKind::YPrime}, {{q, ErrorKind::YPrime}});
    return out;
  }();
  return classes;
}

struct SyndromeOutcome {
  int class_id = 0;
  double probability = 0.0;
  ErrorSpec representative;
  std::vector<ErrorSpec> degeneracy_members;
};

/// Projective measurement of the 22 orthogonal subspaces.  The outcome is
/// sampled with Born probabilities; the returned state is the renormalized
/// projection onto the outcome's subspace.
inline std::pair<SyndromeOutcome, Vector> syndrome_measure(const Vector& s, Rng& rng) {
  if (s.size() != kNineDim) throw DimensionMismatch("syndrome_measure: not a nine-qubit state");
  const auto& classes = syndrome_classes();
  std::vector<double> probs(classes.size());
  std::vector<std::pair<Complex, Complex>> overlaps(classes.size());
  double total = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const Complex a = classes[c].basis_zero.dot(s);
    const Complex b = classes[c].basis_one.dot(s);
    overlaps[c] = {a, b};
    probs[c] = std::norm(a) + std::norm(b);
    total += probs[c];
  }
  const double norm2 = s.squaredNorm();
  if (norm2 - total > 1e-9)
    throw ResidualOutsideSubspaces("syndrome_measure: state has weight outside the 44-dim span");

  const double u = rng.uniform() * total;
  std::size_t chosen = classes.size() - 1;
  double acc = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    acc += probs[c];
    if (u < acc) {
      chosen = c;
      break;
    }
  }

  Vector collapsed = overlaps[chosen].first * classes[chosen].basis_zero +
                     overlaps[chosen].second * classes[chosen].basis_one;
  collapsed /= std::sqrt(probs[chosen]);

  SyndromeOutcome outcome;
  outcome.class_id = classes[chosen].id;
  outcome.probability = probs[chosen] / norm2;
  outcome.representative = classes[chosen].representative;
  outcome.degeneracy_members = classes[chosen].members;
  return {outcome, collapsed};
}

inline std::pair<SyndromeOutcome, Vector> syndrome_measure(const Vector& s,
                                                           std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return syndrome_measure(s, rng);
}

/// Maps the outcome's subspace unitarily back to the code subspace by
/// applying the inverse of the representative error.
inline Vector correct(const Vector& s, const SyndromeOutcome& outcome) {
  Vector out = s;
  const ErrorSpec rep = outcome.representative;
  switch (rep.kind) {
    case ErrorKind::I: break;
    case ErrorKind::X:
    case ErrorKind::Z:
      out = apply_error(out, rep);  // involutions
      break;
    case ErrorKind::YPrime:
      out = apply_single_qubit(out, Matrix(error_matrix(ErrorKind::YPrime).adjoint()), rep.qubit);
      break;
  }
  const Vector zero = logical_zero(), one = logical_one();
  const double inside = std::norm(zero.dot(out)) + std::norm(one.dot(out));
  if (out.squaredNorm() - inside > 1e-9)
    throw NotInSubspace("correct: corrected state is outside the code subspace");
  return out;
}

/// Projects onto the logical basis and fixes the global phase: alpha is made
/// real nonnegative (beta, if alpha vanishes).
inline LogicalQubit decode(const Vector& s) {
  const Complex a = logical_zero().dot(s);
  const Complex b = logical_one().dot(s);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  if (n < 1e-9) throw NotInSubspace("decode: state has no code-subspace component");
  Complex alpha = a / n, beta = b / n;
  const Complex anchor = (std::abs(alpha) > 1e-12) ? alpha : beta;
  const Complex phase = std::conj(anchor) / std::abs(anchor);
  return LogicalQubit(alpha * phase, beta * phase);
}

// ---------------------------------------------------------------------------
// Table of the 27 single-qubit errors.
// ---------------------------------------------------------------------------

struct Table1Row {
  std::string error_label;     // e.g. "bit flip on 1st qubit"
  std::string operator_label;  // e.g. "s1.1.1.1.1.1.1.1.1"
  std::string state_label;     // e.g. "a|u1 u u> + b|d1 d d>"
  Vector state;
};

namespace detail {

inline std::string ordinal(int n) {
  const char* suffix = "th";
  if (n % 10 == 1 && n != 11) suffix = "st";
  else if (n % 10 == 2 && n != 12) suffix = "nd";
  else if (n % 10 == 3 && n != 13) suffix = "rd";
  return std::to_string(n) + suffix;
}

inline std::string operator_label(const ErrorSpec& e) {
  const char* sym = "1";
  switch (e.kind) {
    case ErrorKind::I: sym = "1"; break;
    case ErrorKind::X: sym = "s1"; break;
    case ErrorKind::Z: sym = "s3"; break;
    case ErrorKind::YPrime: sym = "-is2"; break;
  }
  std::string out;
  for (int q = 1; q <= 9; ++q) {
    if (q > 1) out += ".";
    out += (e.kind != ErrorKind::I && q == e.qubit) ? sym : "1";
  }
  return out;
}

inline std::string state_label(const ErrorSpec& e) {
  // Triplet labels for the alpha (all-up) and beta (all-down) components.
  std::array<std::string, 3> up{"u", "u", "u"}, down{"d", "d", "d"};
  if (e.kind != ErrorKind::I) {
    const int t = (e.qubit - 1) / 3;
    const int i = (e.qubit - 1) % 3 + 1;
    switch (e.kind) {
      case ErrorKind::X:
        up[t] = "u" + std::to_string(i);
        down[t] = "d" + std::to_string(i);
        break;
      case ErrorKind::Z:
        up[t] = "d";
        down[t] = "u";
        break;
      case ErrorKind::YPrime:
        up[t] = "d" + std::to_string(i);
        down[t] = "u" + std::to_string(i);
        break;
      case ErrorKind::I: break;
    }
  }
  return "a|" + up[0] + " " + up[1] + " " + up[2] + "> + b|" + down[0] + " " + down[1] + " " +
         down[2] + ">";
}

}  // namespace detail

/// The 28 rows (no error + 27 errors): bit flips 1-9, phase flips 1-9,
/// phase-bit flips 1-9.
inline std::vector<Table1Row> table1(const LogicalQubit& q) {
  const Vector base = encode(q);
  std::vector<Table1Row> rows;
  const auto add = [&](const ErrorSpec& e, const std::string& label) {
    rows.push_back({label, detail::operator_label(e), detail::state_label(e),
                    apply_error(base, e)});
  };
  add({1, ErrorKind::I}, "no error");
  for (int i = 1; i <= 9; ++i)
    add({i, ErrorKind::X}, "bit flip on " + detail::ordinal(i) + " qubit");
  for (int i = 1; i <= 9; ++i)
    add({i, ErrorKind::Z}, "phase flip on " + detail::ordinal(i) + " qubit");
  for (int i = 1; i <= 9; ++i)
    add({i, ErrorKind::YPrime}, "phase-bit flip on " + detail::ordinal(i) + " qubit");
  return rows;
}

/// Tab-separated export: error label, operator label, state label, amplitude
/// vector (nonzero entries as index:re,im).
inline std::string table1_tsv(const LogicalQubit& q) {
  std::string out = "error\toperator\tstate\tamplitudes\n";
  char buf[96];
  for (const Table1Row& row : table1(q)) {
    out += row.error_label + "\t" + row.operator_label + "\t" + row.state_label + "\t";
    bool first = true;
    for (Eigen::Index i = 0; i < row.state.size(); ++i) {
      const Complex c = row.state(i);
      if (std::abs(c) <= 1e-14) continue;
      std::snprintf(buf, sizeof(buf), "%s%ld:%.17g,%.17g", first ? "" : " ",
                    static_cast<long>(i), c.real(), c.imag());
      out += buf;
      first = false;
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decay channel and demonstrations.
// ---------------------------------------------------------------------------

/// Decay from |0> to |1> with immediate dephasing: A1 = sqrt(1-g)|0><0|,
/// A2 = sqrt(g)|1><0|, A3 = |1><1|.  Exactly trace preserving.
inline QuantumOperation decay_channel(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw DomainError("decay_channel: gamma outside [0, 1]");
  std::vector<Matrix> kraus;
  Matrix a1 = Matrix::Zero(2, 2), a2 = Matrix::Zero(2, 2), a3 = Matrix::Zero(2, 2);
  a1(0, 0) = std::sqrt(1.0 - gamma);
  a2(1, 0) = std::sqrt(gamma);
  a3(1, 1) = 1.0;
  for (const Matrix& a : {a1, a2, a3})
    if (max_abs(a) > 0.0) kraus.push_back(a);
  return QuantumOperation(std::move(kraus));
}

struct DecayDemoResult {
  int branch = 0;             // which decay Kraus operator fired
  double branch_probability = 0.0;
  int syndrome_class = 0;
  double syndrome_probability = 0.0;
  LogicalQubit decoded{1.0, 0.0};
  double fidelity = 0.0;
};

/// One decay event on the indexed qubit, followed by syndrome measurement
/// and correction.  Recovery is perfect on every branch.
inline DecayDemoResult correct_decay_demo(const LogicalQubit& q, int qubit, double gamma,
                                          std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  const Vector base = encode(q);
  const QuantumOperation decay = decay_channel(gamma);

  std::vector<Vector> branches;
  std::vector<double> weights;
  double total = 0.0;
  for (const Matrix& k : decay.kraus()) {
    Vector b = apply_single_qubit(base, k, qubit);
    const double w = b.squaredNorm();
    branches.push_back(std::move(b));
    weights.push_back(w);
    total += w;
  }

  const double u = rng.uniform() * total;
  std::size_t chosen = branches.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    acc += weights[i];
    if (u < acc) {
      chosen = i;
      break;
    }
  }
  if (weights[chosen] <= 1e-30) throw ZeroProbability("correct_decay_demo: dead branch sampled");
  const Vector state = branches[chosen] / std::sqrt(weights[chosen]);

  auto [outcome, collapsed] = syndrome_measure(state, rng);
  const Vector corrected = correct(collapsed, outcome);

  DecayDemoResult result;
  result.branch = static_cast<int>(chosen);
  result.branch_probability = weights[chosen] / total;
  result.syndrome_class = outcome.class_id;
  result.syndrome_probability = outcome.probability;
  result.decoded = decode(corrected);
  result.fidelity = logical_fidelity(q, result.decoded);
  return result;
}

/// Quantum Hamming bound: largest r with 2(1 + rN) <= 2^N.
inline std::uint64_t hamming_bound(int n) {
  if (n < 1 || n > 62) throw DomainError("hamming_bound: N out of range");
  return ((std::uint64_t(1) << (n - 1)) - 1) / static_cast<std::uint64_t>(n);
}

struct RepetitionStats {
  double empirical = 0.0;
  double exact = 0.0;           // 3p^2 - 2p^3 by majority-vote enumeration
  double leading_order = 0.0;   // 3p^2
  double stddev = 0.0;          // binomial standard deviation of the estimate
  std::uint64_t trials = 0;
};

/// Majority-vote repetition code under iid bit flips with probability p.
inline RepetitionStats classical_repetition(double p, std::uint64_t trials, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw DomainError("classical_repetition: p outside [0, 1]");
  RepetitionStats stats;
  stats.trials = trials;
  // Enumerate the 8 flip patterns; logical error iff 2 or 3 flips.
  double exact = 0.0;
  for (int pattern = 0; pattern < 8; ++pattern) {
    const int flips = ((pattern >> 2) & 1) + ((pattern >> 1) & 1) + (pattern & 1);
    if (flips >= 2)
      exact += std::pow(p, flips) * std::pow(1.0 - p, 3 - flips);
  }
  stats.exact = exact;
  stats.leading_order = 3.0 * p * p;

  std::uint64_t errors = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed, t + 1);
    int flips = 0;
    for (int bit = 0; bit < 3; ++bit)
      if (rng.uniform() < p) ++flips;
    if (flips >= 2) ++errors;
  }
  stats.empirical = trials ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0;
  stats.stddev = trials ? std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials)) : 0.0;
  return stats;
}

struct MonteCarloStats {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;            // trials with fidelity < 1 - 1e-9
  std::uint64_t low_weight_failures = 0; // failed trials that had <= 1 error
  std::uint64_t residual_outcomes = 0;   // trials collapsing outside the 44-dim span
  double failure_rate = 0.0;
  double mean_fidelity = 0.0;
};

/// Monte-Carlo logical error rate: iid per-qubit depolarizing noise (each
/// qubit suffers X, Y', Z with probability p/3 each), one syndrome+correct
/// round per trial.
inline MonteCarloStats shor_monte_carlo(double p, std::uint64_t trials, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw DomainError("shor_monte_carlo: p outside [0, 1]");
  MonteCarloStats stats;
  stats.trials = trials;
  double fidelity_sum = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed, t + 1);
    // Uniform logical state on the Bloch sphere.
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 6.283185307179586476925286766559);
    const double theta = std::acos(z);
    const LogicalQubit q(std::cos(theta / 2.0),
                         Complex(std::cos(phi), std::sin(phi)) * std::sin(theta / 2.0));
    Vector state = encode(q);
    int error_count = 0;
    for (int qubit = 1; qubit <= 9; ++qubit) {
      if (rng.uniform() >= p) continue;
      ++error_count;
      const double which = rng.uniform();
      const ErrorKind kind = which < 1.0 / 3.0   ? ErrorKind::X
                             : which < 2.0 / 3.0 ? ErrorKind::YPrime
                                                 : ErrorKind::Z;
      state = apply_error(state, {qubit, kind});
    }
    // Complete measurement: the 22 syndrome subspaces plus the orthogonal
    // complement of their span.  Multi-qubit errors can put weight in the
    // complement; a trial that collapses there is an outright logical failure
    // (no correction is defined for it), recorded with fidelity 0.
    const auto& classes = syndrome_classes();
    std::vector<double> probs(classes.size());
    double inside = 0.0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      probs[c] = std::norm(classes[c].basis_zero.dot(state)) +
                 std::norm(classes[c].basis_one.dot(state));
      inside += probs[c];
    }
    const double residual = std::max(state.squaredNorm() - inside, 0.0);
    double fid = 0.0;
    if (rng.uniform() * (inside + residual) >= inside) {
      ++stats.residual_outcomes;
    } else {
      Vector kept = Vector::Zero(kNineDim);
      for (std::size_t c = 0; c < classes.size(); ++c)
        kept += classes[c].basis_zero.dot(state) * classes[c].basis_zero +
                classes[c].basis_one.dot(state) * classes[c].basis_one;
      auto [outcome, collapsed] = syndrome_measure(Vector(kept / kept.norm()), rng);
      fid = logical_fidelity(q, decode(correct(collapsed, outcome)));
    }
    fidelity_sum += fid;
    if (fid < 1.0 - 1e-9) {
      ++stats.failures;
      if (error_count <= 1) ++stats.low_weight_failures;
    }
  }
  stats.failure_rate = trials ? static_cast<double>(stats.failures) / static_cast<double>(trials) : 0.0;
  stats.mean_fidelity = trials ? fidelity_sum / static_cast<double>(trials) : 1.0;
  return stats;
}

}  // namespace shor
}  // namespace qopkit

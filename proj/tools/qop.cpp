// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

// qop: command-line front end for channel analysis, reversibility checks and
// the nine-bit code demonstrations.  Exit codes: 0 success (any verdict),
// 2 validation failure, 3 parse failure, 4 internal numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qopkit/channels.hpp"
#include "qopkit/entfid.hpp"
#include "qopkit/io.hpp"
#include "qopkit/reversal.hpp"
#include "qopkit/shorcode.hpp"
#include "qopkit/superop.hpp"

namespace {

using namespace qopkit;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt(Complex z) {
  return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i";
}

struct AnalysisReport {
  std::string input;
  Eigen::Index dim = 0;
  std::size_t kraus_count = 0;
  std::size_t canonical_kraus_count = 0;
  bool completely_positive = false;
  bool trace_preserving = false;
  std::optional<bool> reversible;
  std::optional<double> mu_squared;
  std::vector<double> lambdas;
  double entropy_exchange = 0.0;
  double entanglement_fidelity = 0.0;
  double quadratic = 0.0;
  double lambda1 = 0.0;
  double fano_bound = 0.0;
  double quad_fano_bound = 0.0;
  std::optional<double> corrected_fidelity;
  std::optional<double> anti_fano_entropy_bound;
  std::optional<double> anti_fano_quad_bound;
  std::vector<std::string> violations;

  Json to_json() const {
    Json j;
    j["input"] = input;
    j["dim"] = dim;
    j["kraus_count"] = kraus_count;
    j["canonical_kraus_count"] = canonical_kraus_count;
    j["completely_positive"] = completely_positive;
    j["trace_preserving"] = trace_preserving;
    if (reversible) j["reversible"] = *reversible;
    if (mu_squared) j["mu_squared"] = *mu_squared;
    j["lambdas"] = lambdas;
    j["entropy_exchange_bits"] = entropy_exchange;
    j["entanglement_fidelity"] = entanglement_fidelity;
    j["quadratic_entropy"] = quadratic;
    j["lambda1"] = lambda1;
    j["fano_bound"] = fano_bound;
    j["quad_fano_bound"] = quad_fano_bound;
    if (corrected_fidelity) {
      j["corrected_fidelity"] = *corrected_fidelity;
      j["anti_fano_entropy_bound"] = *anti_fano_entropy_bound;
      j["anti_fano_quad_bound"] = *anti_fano_quad_bound;
    }
    j["violations"] = violations;
    return j;
  }
};

void print_report(const AnalysisReport& r, bool as_json) {
  if (as_json) {
    std::cout << r.to_json().dump(2) << "\n";
    return;
  }
  std::cout << "input: " << r.input << "\n"
            << "dim: " << r.dim << "\n"
            << "kraus count: " << r.kraus_count << " (canonical " << r.canonical_kraus_count
            << ")\n"
            << "completely positive: " << (r.completely_positive ? "yes" : "no") << "\n"
            << "trace preserving: " << (r.trace_preserving ? "yes" : "no") << "\n";
  if (r.reversible) std::cout << "reversible: " << (*r.reversible ? "yes" : "no") << "\n";
  if (r.mu_squared) std::cout << "mu^2: " << fmt(*r.mu_squared) << "\n";
  std::cout << "lambda spectrum:";
  for (double l : r.lambdas) std::cout << " " << fmt(l);
  std::cout << "\n"
            << "entropy exchange S_e (bits): " << fmt(r.entropy_exchange) << "\n"
            << "entanglement fidelity F_e: " << fmt(r.entanglement_fidelity) << "\n"
            << "quadratic entropy Tr(A_rho^2): " << fmt(r.quadratic) << "\n"
            << "lambda_1: " << fmt(r.lambda1) << "\n"
            << "Fano bound on S_e: " << fmt(r.fano_bound)
            << " (margin " << fmt(r.fano_bound - r.entropy_exchange) << ")\n"
            << "quadratic Fano bound: " << fmt(r.quad_fano_bound)
            << " (margin " << fmt(r.quadratic - r.quad_fano_bound) << ")\n";
  if (r.corrected_fidelity) {
    std::cout << "corrected fidelity F_e(A'): " << fmt(*r.corrected_fidelity) << "\n"
              << "anti-Fano bound 2^(-2 S_e): " << fmt(*r.anti_fano_entropy_bound)
              << " (margin " << fmt(*r.corrected_fidelity - *r.anti_fano_entropy_bound) << ")\n"
              << "quadratic anti-Fano bound: " << fmt(*r.anti_fano_quad_bound)
              << " (margin " << fmt(*r.corrected_fidelity - *r.anti_fano_quad_bound) << ")\n";
  }
  if (r.violations.empty()) {
    std::cout << "violations: none\n";
  } else {
    for (const std::string& v : r.violations) std::cout << "violation: " << v << "\n";
  }
}

int cmd_analyze(const std::string& channel_path, const std::string& state_path, bool as_json) {
  const ChannelSpec spec = channel_from_json(load_json_file(channel_path));
  const QuantumOperation& op = spec.op;
  const DensityOperator rho = state_path.empty()
                                  ? DensityOperator::maximally_mixed(op.dim())
                                  : state_from_json(load_json_file(state_path));
  if (rho.dim() != op.dim()) throw DimensionMismatch("analyze: state dim differs from channel dim");

  AnalysisReport r;
  r.input = channel_path;
  r.dim = op.dim();
  r.kraus_count = op.kraus().size();
  const Superoperator s = op.superoperator();
  r.completely_positive = is_completely_positive(s);
  r.trace_preserving = op.trace_preserving();
  r.canonical_kraus_count = kraus_from_superop(s).size();

  const FidelityReport f = fano_check(op, rho);
  r.entanglement_fidelity = f.entanglement_fidelity;
  r.entropy_exchange = f.entropy_exchange;
  r.quadratic = f.quadratic;
  r.lambda1 = f.lambda1;
  r.fano_bound = f.fano_bound;
  r.quad_fano_bound = f.quad_fano_bound;
  const RealVector w = detail::arho_spectrum(op, rho);
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > 1e-12) r.lambdas.push_back(w(i));

  if (r.entropy_exchange > r.fano_bound + 1e-9) r.violations.push_back("Fano inequality");
  if (r.quadratic < r.quad_fano_bound - 1e-9) r.violations.push_back("quadratic Fano inequality");

  if (r.trace_preserving) {
    const UnitaryCorrection c = unitary_correction(op, rho);
    r.corrected_fidelity = c.report.entanglement_fidelity;
    r.anti_fano_entropy_bound = c.report.anti_fano_entropy_bound;
    r.anti_fano_quad_bound = c.report.anti_fano_quad_bound;
    if (*r.corrected_fidelity < *r.anti_fano_entropy_bound - 1e-9)
      r.violations.push_back("anti-Fano inequality");
    if (*r.corrected_fidelity < *r.anti_fano_quad_bound - 1e-9)
      r.violations.push_back("quadratic anti-Fano inequality");
  }
  if (spec.env_model) {
    const QuantumOperation from_env = kraus_from_environment(*spec.env_model);
    if (max_abs(from_env.superoperator().lr_matrix() - s.lr_matrix()) > 1e-8)
      r.violations.push_back("env_model disagrees with the Kraus list");
  }
  print_report(r, as_json);
  return 0;
}

int cmd_revcheck(const std::string& channel_path, const std::string& code_path,
                 const std::string& out_path, bool as_json) {
  const ChannelSpec spec = channel_from_json(load_json_file(channel_path));
  const CodeSubspace code = code_from_json(load_json_file(code_path));
  if (code.physical_dim() != spec.op.dim())
    throw DimensionMismatch("revcheck: code dim differs from channel dim");

  const ReversibilityReport rep = check_algebraic_reversibility(spec.op, code);
  const InfoConditions info = check_info_conditions(spec.op, code);

  AnalysisReport r;
  r.input = channel_path + " + " + code_path;
  r.dim = spec.op.dim();
  r.kraus_count = spec.op.kraus().size();
  const Superoperator s = spec.op.superoperator();
  r.completely_positive = is_completely_positive(s);
  r.trace_preserving = spec.op.trace_preserving();
  r.canonical_kraus_count = kraus_from_superop(s).size();
  r.reversible = rep.reversible;
  r.mu_squared = rep.mu_squared;

  const DensityOperator rho = code.uniform_state();
  const FidelityReport f = fano_check(spec.op, rho);
  r.entanglement_fidelity = f.entanglement_fidelity;
  r.entropy_exchange = f.entropy_exchange;
  r.quadratic = f.quadratic;
  r.lambda1 = f.lambda1;
  r.fano_bound = f.fano_bound;
  r.quad_fano_bound = f.quad_fano_bound;

  double residual = 0.0;
  if (rep.reversible) {
    const CanonicalDecomposition canon = canonical_decomposition(spec.op, code);
    r.lambdas = canon.lambdas;
    const QuantumOperation reversal = reversal_operation(canon);
    residual = verify_reversal(reversal, spec.op, code);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw DomainError("revcheck: cannot open output path " + out_path);
      out << channel_to_json(reversal).dump(2) << "\n";
    }
  } else {
    r.violations.push_back("blockwise reversibility violation " + fmt(rep.max_violation));
  }
  if (rep.reversible != (info.cond1 && info.cond2))
    r.violations.push_back("algebraic and information-theoretic verdicts disagree");

  if (as_json) {
    Json j = r.to_json();
    j["max_violation"] = rep.max_violation;
    j["info_cond1"] = info.cond1;
    j["info_cond2"] = info.cond2;
    j["entropy_gap_bits"] = info.entropy_gap;
    j["m_matrix"] = matrix_to_json(rep.m_matrix);
    if (rep.reversible) {
      j["reversal_residual"] = residual;
      if (!out_path.empty()) j["reversal_written_to"] = out_path;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  print_report(r, false);
  std::cout << "max blockwise violation: " << fmt(rep.max_violation) << "\n"
            << "info condition 1 (constant trace on C): " << (info.cond1 ? "yes" : "no") << "\n"
            << "info condition 2 (entropy identity): " << (info.cond2 ? "yes" : "no")
            << " (gap " << fmt(info.entropy_gap) << " bits)\n";
  std::cout << "m matrix:\n";
  for (Eigen::Index a = 0; a < rep.m_matrix.rows(); ++a) {
    std::cout << " ";
    for (Eigen::Index b = 0; b < rep.m_matrix.cols(); ++b)
      std::cout << " " << fmt(rep.m_matrix(a, b));
    std::cout << "\n";
  }
  if (rep.reversible) {
    std::cout << "reversal residual |R o A_C - mu^2 P_C pair|: " << fmt(residual) << "\n";
    if (!out_path.empty()) std::cout << "reversal channel written to: " << out_path << "\n";
  }
  return 0;
}

shor::LogicalQubit logical_from_flags(double ar, double ai, double br, double bi) {
  const Complex a(ar, ai), b(br, bi);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  if (n < 1e-12) throw DomainError("logical state: amplitudes are all zero");
  return shor::LogicalQubit(a / n, b / n);
}

int cmd_shor_table(double ar, double ai, double br, double bi) {
  std::cout << shor::table1_tsv(logical_from_flags(ar, ai, br, bi));
  return 0;
}

int cmd_shor_demo(double ar, double ai, double br, double bi, int qubit, double gamma,
                  std::uint64_t seed) {
  const shor::LogicalQubit q = logical_from_flags(ar, ai, br, bi);
  const shor::DecayDemoResult r = shor::correct_decay_demo(q, qubit, gamma, seed);
  std::cout << "input: alpha=" << fmt(q.alpha) << " beta=" << fmt(q.beta) << "\n"
            << "decay on qubit " << qubit << " with gamma=" << fmt(gamma) << ", seed " << seed
            << "\n"
            << "decay branch: " << r.branch << " (probability " << fmt(r.branch_probability)
            << ")\n"
            << "syndrome class: " << r.syndrome_class << " (probability "
            << fmt(r.syndrome_probability) << ")\n"
            << "decoded: alpha=" << fmt(r.decoded.alpha) << " beta=" << fmt(r.decoded.beta) << "\n"
            << "fidelity: " << fmt(r.fidelity) << "\n";
  return 0;
}

int cmd_shor_mc(double p, std::uint64_t trials, std::uint64_t seed) {
  const shor::MonteCarloStats mc = shor::shor_monte_carlo(p, trials, seed);
  const shor::RepetitionStats rep = shor::classical_repetition(p, trials, seed);
  const double mc_sigma =
      trials ? std::sqrt(std::max(mc.failure_rate * (1.0 - mc.failure_rate), 0.0) /
                         static_cast<double>(trials))
             : 0.0;
  std::cout << "nine-bit code, iid depolarizing p=" << fmt(p) << ", trials " << trials
            << ", seed " << seed << "\n"
            << "logical failures: " << mc.failures << " (rate " << fmt(mc.failure_rate)
            << " +/- " << fmt(2.0 * mc_sigma) << ")\n"
            << "single-error failures: " << mc.low_weight_failures << "\n"
            << "mean fidelity: " << fmt(mc.mean_fidelity) << "\n"
            << "classical repetition: empirical " << fmt(rep.empirical) << " +/- "
            << fmt(2.0 * rep.stddev) << ", exact 3p^2-2p^3 = " << fmt(rep.exact)
            << ", leading order 3p^2 = " << fmt(rep.leading_order) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum operation analysis toolkit"};
  app.require_subcommand(1);

  std::string channel_path, state_path, code_path, out_path;
  bool as_json = false;
  double ar = 1.0, ai = 0.0, br = 0.0, bi = 0.0, gamma = 0.5, p = 0.1;
  int qubit = 1;
  std::uint64_t seed = 1, trials = 10000;

  CLI::App* analyze = app.add_subcommand("analyze", "analyze a channel file");
  analyze->add_option("channel", channel_path, "channel-spec JSON file")->required();
  analyze->add_option("--state", state_path, "density-operator JSON file");
  analyze->add_flag("--json", as_json, "emit a JSON report");

  CLI::App* revcheck = app.add_subcommand("revcheck", "check reversibility on a code subspace");
  revcheck->add_option("channel", channel_path, "channel-spec JSON file")->required();
  revcheck->add_option("code", code_path, "code-subspace JSON file")->required();
  revcheck->add_option("--out", out_path, "write the reversal channel here");
  revcheck->add_flag("--json", as_json, "emit a JSON report");

  CLI::App* sh = app.add_subcommand("shor", "nine-bit code demonstrations");
  sh->require_subcommand(1);
  CLI::App* table = sh->add_subcommand("table", "emit the 28-row error table as TSV");
  CLI::App* demo = sh->add_subcommand("demo", "one decay event, corrected");
  CLI::App* mc = sh->add_subcommand("mc", "Monte-Carlo logical error rate");
  for (CLI::App* c : {table, demo}) {
    c->add_option("--alpha-re", ar, "Re alpha");
    c->add_option("--alpha-im", ai, "Im alpha");
    c->add_option("--beta-re", br, "Re beta");
    c->add_option("--beta-im", bi, "Im beta");
  }
  demo->add_option("--qubit", qubit, "decaying qubit (1..9)")->check(CLI::Range(1, 9));
  demo->add_option("--gamma", gamma, "decay probability")->check(CLI::Range(0.0, 1.0));
  demo->add_option("--seed", seed, "random seed");
  mc->add_option("--p", p, "per-qubit error probability")->check(CLI::Range(0.0, 1.0));
  mc->add_option("--trials", trials, "number of trials");
  mc->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(channel_path, state_path, as_json);
    if (app.got_subcommand(revcheck))
      return cmd_revcheck(channel_path, code_path, out_path, as_json);
    if (sh->got_subcommand(table)) return cmd_shor_table(ar, ai, br, bi);
    if (sh->got_subcommand(demo)) return cmd_shor_demo(ar, ai, br, bi, qubit, gamma, seed);
    if (sh->got_subcommand(mc)) return cmd_shor_mc(p, trials, seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const DimensionMismatch& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidModel& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "internal numeric error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

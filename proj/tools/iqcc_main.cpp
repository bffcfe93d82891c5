/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "iqcc/corrections.hpp"
#include "iqcc/driver.hpp"
#include "iqcc/fcidump.hpp"
#include "iqcc/jordan_wigner.hpp"
#include "iqcc/operator_io.hpp"
#include "iqcc/oracle.hpp"
#include "iqcc/run_config.hpp"

namespace {

using namespace iqcc;

constexpr int kExitOk = 0;
constexpr int kExitError = 2;        // bad input, bad config, runtime failure
constexpr int kExitNotConverged = 3; // run stopped on max_iterations

std::string fixed12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

int env_threads() {
  const char* env = std::getenv("IQCC_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return v > 0 ? v : 1;
}

int cmd_map(const std::string& fcidump_path, const std::string& ordering_name,
            const std::vector<uint32_t>& freeze, const std::string& output) {
  IntegralSet integrals = load_fcidump(fcidump_path);
  if (!freeze.empty()) integrals = freeze_core(integrals, freeze);
  const SpinOrbitalOrdering ordering = parse_ordering(ordering_name);
  const QubitOperator h = jordan_wigner(integrals, ordering);
  save_operator(h, output);

  const MeanFieldState ref = hf_reference(integrals, ordering);
  std::cout << "nqubits " << h.n_qubits() << "\n"
            << "nterms " << h.size() << "\n"
            << "reference " << ref.str() << "\n"
            << "e_hf " << fixed12(hf_energy(integrals)) << "\n";
  return kExitOk;
}

int cmd_exact(const std::string& operator_path, double amp_threshold,
              uint64_t seed, int threads) {
  const QubitOperator h = load_operator(operator_path);
  OracleOptions options;
  options.seed = seed;
  options.threads = threads;
  const GroundState ground = ground_energy(h, options);
  std::cout << "energy " << fixed12(ground.energy) << "\n";

  if (amp_threshold > 0.0) {
    std::vector<std::pair<double, size_t>> weights;
    for (size_t i = 0; i < ground.vector.amplitudes.size(); ++i) {
      const double a = std::abs(ground.vector.amplitudes[i]);
      if (a >= amp_threshold) weights.emplace_back(a, i);
    }
    std::sort(weights.begin(), weights.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (const auto& [amp, index] : weights) {
      std::string det(h.n_qubits(), '+');
      for (uint32_t q = 0; q < h.n_qubits(); ++q)
        if ((index >> q) & 1) det[q] = '-';
      std::cout << "det " << det << " " << fixed12(amp) << "\n";
    }
  }
  return kExitOk;
}

int cmd_correct(const std::string& operator_path, const std::string& reference,
                const std::vector<std::string>& scheme_names, size_t m) {
  const QubitOperator h = load_operator(operator_path);
  const MeanFieldState state = MeanFieldState::from_string(reference);
  if (state.n_qubits() != h.n_qubits())
    throw std::invalid_argument("reference length does not match the operator");

  const IsingDecomposition dec = ising_decompose(h);
  const double e0 = expectation(dec, state);
  std::vector<DISGroup> groups = build_dis(dec, state);
  rank_groups(groups, RankingScheme::gradient);

  std::cout << "e0 " << fixed12(e0) << "\n"
            << "n_groups " << groups.size() << "\n";
  const CorrectionInput input{e0, groups};
  for (const std::string& name : scheme_names) {
    const CorrectionKind kind = parse_correction(name);
    switch (kind) {
      case CorrectionKind::en2: {
        const En2Result r = en2(input);
        std::cout << "en2 " << fixed12(r.delta) << " " << fixed12(e0 + r.delta);
        if (r.n_skipped > 0)
          std::cout << " # skipped " << r.n_skipped
                    << " near-degenerate group(s)";
        std::cout << "\n";
        break;
      }
      case CorrectionKind::duc: {
        const double d = duc(input);
        std::cout << "duc " << fixed12(d) << " " << fixed12(e0 + d) << "\n";
        break;
      }
      case CorrectionKind::bw: {
        const BWResult r = bw(input);
        std::cout << "bw " << fixed12(r.delta) << " " << fixed12(e0 + r.delta);
        if (!r.converged) std::cout << " # not converged";
        std::cout << "\n";
        break;
      }
      case CorrectionKind::ci: {
        const CiResult r = ci_in_dis(dec, state, groups);
        std::cout << "ci " << fixed12(r.energy - e0) << " " << fixed12(r.energy)
                  << "\n";
        break;
      }
      case CorrectionKind::effheff: {
        const size_t m_used = std::min(m, groups.size() + 1);
        const double e = effective_hamiltonian(dec, state, groups, m_used);
        std::cout << "effheff_m" << m_used << " " << fixed12(e - e0) << " "
                  << fixed12(e) << "\n";
        break;
      }
    }
  }
  return kExitOk;
}

int cmd_run(const std::string& config_path, bool resume) {
  namespace fs = std::filesystem;
  const RunConfig config = load_run_config(config_path);

  QubitOperator h = load_operator(config.hamiltonian_path);
  const MeanFieldState reference = MeanFieldState::from_string(config.reference);
  if (reference.n_qubits() != h.n_qubits())
    throw std::invalid_argument("reference length does not match the operator");
  if (config.iterate.active_space) {
    for (uint32_t q : config.iterate.active_space->active_qubits)
      if (q >= h.n_qubits())
        throw std::invalid_argument("active qubit index out of range");
  }

  IterateStart start;
  if (resume) {
    if (config.checkpoint_dir.empty())
      throw std::invalid_argument("--resume requires checkpoint_dir in config");
    auto [checkpoint, dressed] = load_checkpoint(config.checkpoint_dir);
    if (checkpoint.reference != config.reference)
      throw std::invalid_argument("checkpoint reference mismatch");
    start.first_iteration = checkpoint.next_iteration;
    start.previous_record = checkpoint.last_record;
    h = std::move(dressed);
  }

  fs::create_directories(config.output_dir);
  const std::string log_path =
      (fs::path(config.output_dir) /
       (config.log_format == RunConfig::LogFormat::csv ? "run_log.csv"
                                                       : "run_log.jsonl"))
          .string();
  std::ofstream log(log_path, resume ? std::ios::app : std::ios::trunc);
  if (!log) throw std::runtime_error("cannot write log '" + log_path + "'");
  RunLogWriter writer(log, config, /*skip_header=*/resume);

  const IterationCallback callback = [&](const IterationRecord& record,
                                         const QubitOperator& next_h) {
    writer.write_record(record);
    if (!config.checkpoint_dir.empty()) {
      Checkpoint checkpoint;
      checkpoint.next_iteration = record.iteration + 1;
      checkpoint.last_record = record;
      checkpoint.reference = config.reference;
      checkpoint.seed = config.seed;
      save_checkpoint(config.checkpoint_dir, checkpoint, next_h);
    }
  };

  const IterateResult result =
      iterate(h, reference, config.iterate, callback, start);

  std::cout << "stop_reason " << stop_reason_name(result.stop_reason) << "\n"
            << "converged " << (result.converged ? "true" : "false") << "\n"
            << "iterations " << (result.records.empty()
                                     ? 0
                                     : result.records.back().iteration)
            << "\n"
            << "peak_terms " << result.peak_terms << "\n";
  if (!result.records.empty()) {
    const IterationRecord& last = result.records.back();
    std::cout << "e_iqcc " << fixed12(last.e_iqcc) << "\n";
    for (const auto& [label, value] : last.corrected)
      std::cout << "e_" << label << " " << fixed12(value) << "\n";
  }
  if (!result.message.empty()) std::cout << "note " << result.message << "\n";
  for (const auto& [phase, seconds] : result.phase_seconds)
    std::cout << "time_" << phase << " " << seconds << "\n";

  return result.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iterative qubit coupled cluster with a posteriori energy "
               "corrections"};
  app.require_subcommand(1);

  // map
  std::string fcidump_path, ordering = "interleaved", map_output;
  std::vector<uint32_t> freeze;
  CLI::App* map = app.add_subcommand(
      "map", "JW-map an FCIDUMP file to a qubit operator file");
  map->add_option("fcidump", fcidump_path, "FCIDUMP input")->required();
  map->add_option("-o,--output", map_output, "operator file to write")
      ->required();
  map->add_option("--ordering", ordering, "interleaved|blocked")
      ->check(CLI::IsMember({"interleaved", "blocked"}));
  map->add_option("--freeze", freeze,
                  "0-based spatial orbitals to freeze (comma separated)")
      ->delimiter(',');

  // exact
  std::string exact_operator;
  double amp_threshold = 0.0;
  uint64_t exact_seed = 7;
  CLI::App* exact = app.add_subcommand(
      "exact", "exact lowest eigenvalue of an operator file");
  exact->add_option("operator", exact_operator, "operator file")->required();
  exact->add_option("--amp-threshold", amp_threshold,
                    "print determinants with |amplitude| above this");
  exact->add_option("--seed", exact_seed, "Lanczos start-vector seed");

  // correct
  std::string correct_operator, correct_reference;
  std::vector<std::string> schemes{"en2", "duc", "bw"};
  size_t effheff_m = 2;
  CLI::App* correct = app.add_subcommand(
      "correct", "one-shot correction report for an operator + reference");
  correct->add_option("operator", correct_operator, "operator file")
      ->required();
  correct->add_option("--reference", correct_reference,
                      "mean-field state over {+,-}, qubit 0 leftmost")
      ->required();
  correct->add_option("--schemes", schemes, "subset of en2,duc,bw,ci,effheff")
      ->delimiter(',');
  correct->add_option("--m", effheff_m, "effective-Hamiltonian block size");

  // run
  std::string config_path;
  bool resume = false;
  CLI::App* run = app.add_subcommand("run", "iterate a config-driven run");
  run->add_option("config", config_path, "run configuration file")->required();
  run->add_flag("--resume", resume, "resume from the configured checkpoint");

  CLI11_PARSE(app, argc, argv);

  try {
    if (map->parsed()) return cmd_map(fcidump_path, ordering, freeze, map_output);
    if (exact->parsed())
      return cmd_exact(exact_operator, amp_threshold, exact_seed, env_threads());
    if (correct->parsed())
      return cmd_correct(correct_operator, correct_reference, schemes,
                         effheff_m);
    if (run->parsed()) return cmd_run(config_path, resume);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

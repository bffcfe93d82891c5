/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace iqcc {

namespace {

class PhaseTimer {
 public:
  explicit PhaseTimer(std::map<std::string, double>& sink) : sink_(sink) {}

  template <typename F>
  auto time(const std::string& phase, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(phase, t0);
    } else {
      auto result = f();
      record(phase, t0);
      return result;
    }
  }

 private:
  void record(const std::string& phase,
              std::chrono::steady_clock::time_point t0) {
    sink_[phase] += std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  }
  std::map<std::string, double>& sink_;
};

size_t dynamic_block_size(const std::vector<DISGroup>& ranked,
                          double threshold) {
  size_t m = 1;
  for (const DISGroup& g : ranked) {
    const double weight =
        g.omega / std::max(std::abs(g.denom), 1e-300);
    if (weight >= threshold) ++m;
  }
  return std::min(m, ranked.size() + 1);
}

}  // namespace

CorrectionKind parse_correction(const std::string& name) {
  if (name == "en2") return CorrectionKind::en2;
  if (name == "duc") return CorrectionKind::duc;
  if (name == "bw") return CorrectionKind::bw;
  if (name == "effheff") return CorrectionKind::effheff;
  if (name == "ci") return CorrectionKind::ci;
  throw std::invalid_argument("unknown correction '" + name +
                              "' (expected en2|duc|bw|effheff|ci)");
}

std::string correction_name(CorrectionKind kind) {
  switch (kind) {
    case CorrectionKind::en2: return "en2";
    case CorrectionKind::duc: return "duc";
    case CorrectionKind::bw: return "bw";
    case CorrectionKind::effheff: return "effheff";
    case CorrectionKind::ci: return "ci";
  }
  return "?";
}

std::string stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::gradient_converged: return "gradient_converged";
    case StopReason::energy_converged: return "energy_converged";
    case StopReason::reference_eigenstate: return "reference_eigenstate";
    case StopReason::max_iterations: return "max_iterations";
  }
  return "?";
}

IterateResult iterate(const QubitOperator& hamiltonian,
                      const MeanFieldState& reference,
                      const IterateConfig& config,
                      const IterationCallback& on_iteration,
                      const IterateStart& start) {
  if (hamiltonian.n_qubits() != reference.n_qubits())
    throw std::invalid_argument("iterate: Hamiltonian/reference qubit mismatch");
  if (config.generators_per_iter < 1)
    throw std::invalid_argument("iterate: generators_per_iter must be >= 1");

  IterateResult result;
  PhaseTimer timer(result.phase_seconds);
  QubitOperator h = hamiltonian;
  std::optional<IterationRecord> prev = start.previous_record;

  for (int it = start.first_iteration; it <= config.max_iterations; ++it) {
    IterationRecord rec;
    rec.iteration = it;
    rec.n_terms = h.size();
    result.peak_terms = std::max(result.peak_terms, h.size());

    const IsingDecomposition dec =
        timer.time("dis", [&] { return ising_decompose(h); });
    rec.e_iqcc = expectation(dec, reference);

    DISOptions dis_options;
    dis_options.gradient_floor = config.gradient_floor;
    std::vector<DISGroup> groups =
        timer.time("dis", [&] { return build_dis(dec, reference, dis_options); });
    rec.n_groups = groups.size();
    rank_groups(groups, config.ranking, config.degeneracy_floor);

    std::vector<DISGroup> selectable = groups;
    if (config.active_space)
      selectable = filter_active(std::move(selectable), *config.active_space);

    rec.max_gradient = 0.0;
    for (const DISGroup& g : selectable)
      rec.max_gradient = std::max(rec.max_gradient, g.omega);

    timer.time("corrections", [&] {
      const CorrectionInput input{rec.e_iqcc, groups};
      for (CorrectionKind kind : config.corrections) {
        switch (kind) {
          case CorrectionKind::en2:
            rec.corrected["en2"] = rec.e_iqcc + en2(input).delta;
            break;
          case CorrectionKind::duc:
            rec.corrected["duc"] = rec.e_iqcc + duc(input);
            break;
          case CorrectionKind::bw:
            rec.corrected["bw"] = rec.e_iqcc + bw(input).delta;
            break;
          case CorrectionKind::ci:
            rec.corrected["ci"] =
                ci_in_dis(dec, reference, groups, config.ci_dim_cap).energy;
            break;
          case CorrectionKind::effheff: {
            const size_t m =
                config.effheff_dynamic_threshold
                    ? dynamic_block_size(groups,
                                         *config.effheff_dynamic_threshold)
                    : std::min(config.effheff_m, groups.size() + 1);
            const std::string label =
                config.effheff_dynamic_threshold
                    ? "effheff_dyn"
                    : "effheff_m" + std::to_string(config.effheff_m);
            rec.corrected[label] =
                effective_hamiltonian(dec, reference, groups, m);
            break;
          }
        }
      }
    });

    // Stopping tests come before amplitude work; the record is kept either way.
    if (groups.empty()) {
      result.records.push_back(rec);
      if (on_iteration) on_iteration(result.records.back(), h);
      if (it == start.first_iteration && !prev) {
        result.stop_reason = StopReason::reference_eigenstate;
        result.message = "reference is an eigenstate";
      } else {
        result.stop_reason = StopReason::gradient_converged;
      }
      result.converged = true;
      result.final_hamiltonian = std::move(h);
      return result;
    }
    if (rec.max_gradient < config.grad_threshold) {
      result.records.push_back(rec);
      if (on_iteration) on_iteration(result.records.back(), h);
      result.stop_reason = StopReason::gradient_converged;
      result.converged = true;
      result.final_hamiltonian = std::move(h);
      return result;
    }
    if (prev && !rec.corrected.empty() &&
        rec.corrected.size() == prev->corrected.size()) {
      bool stagnant = true;
      for (const auto& [label, value] : rec.corrected) {
        auto old = prev->corrected.find(label);
        if (old == prev->corrected.end() ||
            std::abs(value - old->second) >= config.energy_threshold) {
          stagnant = false;
          break;
        }
      }
      if (stagnant) {
        result.records.push_back(rec);
        if (on_iteration) on_iteration(result.records.back(), h);
        result.stop_reason = StopReason::energy_converged;
        result.converged = true;
        result.final_hamiltonian = std::move(h);
        return result;
      }
    }

    const size_t n_take = std::min<size_t>(
        static_cast<size_t>(config.generators_per_iter), selectable.size());
    std::vector<PauliWord> generators;
    generators.reserve(n_take);
    for (size_t i = 0; i < n_take; ++i) {
      rec.selected_flips.push_back(selectable[i].flip);
      generators.push_back(selectable[i].generator);
    }

    const OptimizeResult opt = timer.time("optimize", [&] {
      return optimize_amplitudes(h, generators, reference, config.optimizer);
    });
    rec.amplitudes.reserve(opt.ansatz.size());
    for (const Entangler& e : opt.ansatz.entanglers)
      rec.amplitudes.push_back(e.amplitude);

    timer.time("dress", [&] {
      h = dress(h, opt.ansatz);
      h.compact(config.drop_tolerance);
    });

    result.records.push_back(std::move(rec));
    if (on_iteration) on_iteration(result.records.back(), h);
    prev = result.records.back();
  }

  result.stop_reason = StopReason::max_iterations;
  result.converged = false;
  result.final_hamiltonian = std::move(h);
  return result;
}

}  // namespace iqcc

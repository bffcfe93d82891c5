/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iqcc/corrections.hpp"
#include "iqcc/dis.hpp"
#include "iqcc/qcc.hpp"

namespace iqcc {

enum class CorrectionKind { en2, duc, bw, effheff, ci };

CorrectionKind parse_correction(const std::string& name);
std::string correction_name(CorrectionKind kind);

struct IterateConfig {
  int generators_per_iter = 1;
  RankingScheme ranking = RankingScheme::gradient;
  std::vector<CorrectionKind> corrections;
  double grad_threshold = 1e-3;    // on max |omega| over selectable groups
  double energy_threshold = 1e-6;  // corrected-energy stagnation
  int max_iterations = 100;
  std::optional<ActiveSpace> active_space;
  size_t effheff_m = 2;
  // when set, m grows dynamically: 1 + #groups with omega/|D| >= threshold
  std::optional<double> effheff_dynamic_threshold;
  size_t ci_dim_cap = 4000;
  double drop_tolerance = 0.0;  // compaction threshold after dressing
  double gradient_floor = 1e-12;
  double degeneracy_floor = 1e-8;
  OptimizeOptions optimizer;
};

struct IterationRecord {
  int iteration = 0;  // 1-based
  double e_iqcc = 0.0;
  // label ("en2", "duc", ...) -> absolute corrected energy, hartree
  std::map<std::string, double> corrected;
  double max_gradient = 0.0;
  size_t n_terms = 0;
  size_t n_groups = 0;  // full DIS size (before any active-space filter)
  std::vector<QubitMask> selected_flips;
  std::vector<double> amplitudes;
};

enum class StopReason {
  gradient_converged,
  energy_converged,
  reference_eigenstate,
  max_iterations,
};

std::string stop_reason_name(StopReason reason);

struct IterateResult {
  std::vector<IterationRecord> records;
  StopReason stop_reason = StopReason::max_iterations;
  bool converged = false;
  QubitOperator final_hamiltonian;
  size_t peak_terms = 0;
  std::map<std::string, double> phase_seconds;  // dis/corrections/optimize/dress
  std::string message;
};

/// Called after each completed iteration with the fresh record and the
/// Hamiltonian dressed for the next iteration (equal to the current one
/// when the run stops here). Used for log streaming and checkpoints.
using IterationCallback =
    std::function<void(const IterationRecord&, const QubitOperator&)>;

/// Resume support: first iteration index and the previous record (for the
/// corrected-energy stagnation test).
struct IterateStart {
  int first_iteration = 1;
  std::optional<IterationRecord> previous_record;
};

/// Outer loop: build the DIS, rank and filter, optimize the top-g
/// amplitudes, record energies and corrections, dress, repeat. Stops when
/// the max selectable gradient drops below grad_threshold, when every
/// enabled corrected energy stagnates, or at max_iterations.
IterateResult iterate(const QubitOperator& hamiltonian,
                      const MeanFieldState& reference,
                      const IterateConfig& config,
                      const IterationCallback& on_iteration = {},
                      const IterateStart& start = {});

}  // namespace iqcc

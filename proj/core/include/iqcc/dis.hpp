/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <optional>
#include <vector>

#include "iqcc/mean_field.hpp"
#include "iqcc/pauli.hpp"

namespace iqcc {

/// One flip-index group of the direct interaction set.
struct DISGroup {
  QubitMask flip;        // flip index k (the X-string mask)
  double omega = 0.0;    // |<0| I_k(z) |0>|, the gradient magnitude
  Complex coupling;      // H_{0k} = <0| H X_k |0>
  double denom = 0.0;    // D_k = E_k - E_0
  PauliWord generator;   // representative with odd y count, x-part = k
};

/// Qubit partition for the active-space treatment. max_inactive_indices = 0
/// keeps internal generators only; 1 or 2 admit semi-internal ones.
struct ActiveSpace {
  std::vector<uint32_t> active_qubits;
  uint32_t max_inactive_indices = 0;

  QubitMask mask(uint32_t n_qubits) const {
    return QubitMask::from_indices(n_qubits, active_qubits);
  }
};

enum class GeneratorPolicy {
  single_y_lowest_bit,  // y on the lowest set bit of k, x elsewhere
};

/// Representative generator for flip index k: X_k with y substituted on an
/// odd-cardinality subset of k's bits (default: just the lowest set bit).
PauliWord select_generator(const QubitMask& k, const MeanFieldState& state,
                           GeneratorPolicy policy =
                               GeneratorPolicy::single_y_lowest_bit);

/// dE/dtau at tau = 0 for a QCC rotation generated by `generator`, from the
/// Ising component matching the generator's x-part. Signed value; its
/// magnitude is the group's omega for even-y hermitian operators.
double generator_slope(const IsingDecomposition& dec,
                       const MeanFieldState& state, const PauliWord& generator);

struct DISOptions {
  double gradient_floor = 1e-12;
  std::optional<ActiveSpace> active_space;
  GeneratorPolicy policy = GeneratorPolicy::single_y_lowest_bit;
};

/// One group per nonzero-gradient Ising component k > 0 that passes the
/// active-space filter, with omega, coupling, denominator and the
/// representative generator filled in. Deterministic order (ascending k).
std::vector<DISGroup> build_dis(const IsingDecomposition& dec,
                                const MeanFieldState& state,
                                const DISOptions& options = {});
std::vector<DISGroup> build_dis(const QubitOperator& op,
                                const MeanFieldState& state,
                                const DISOptions& options = {});

enum class RankingScheme { gradient, en1, en2 };

RankingScheme parse_ranking(const std::string& name);
std::string ranking_name(RankingScheme scheme);

/// Sort groups in place, best first: descending omega, 2*omega/|D| or
/// omega^2/|D|. Groups with |D| below the degeneracy floor rank first.
/// Ties break by ascending flip index. Membership is never changed.
void rank_groups(std::vector<DISGroup>& groups, RankingScheme scheme,
                 double degeneracy_floor = 1e-8);

/// Keep groups whose flip has at most max_inactive_indices bits outside the
/// active set.
std::vector<DISGroup> filter_active(std::vector<DISGroup> groups,
                                    const ActiveSpace& space);

}  // namespace iqcc

/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <vector>

#include "iqcc/dis.hpp"
#include "iqcc/mean_field.hpp"
#include "iqcc/pauli.hpp"

namespace iqcc {

struct Entangler {
  PauliWord generator;  // odd y count
  double amplitude = 0.0;  // radians
};

/// Ordered product of exponentials exp(-i tau_j P_j / 2); order matters.
struct QCCAnsatz {
  std::vector<Entangler> entanglers;

  bool empty() const { return entanglers.empty(); }
  size_t size() const { return entanglers.size(); }
};

/// Exact similarity transform exp(+i tau P/2) op exp(-i tau P/2): terms
/// commuting with P pass through, each anticommuting term Q becomes
/// cos(tau) Q - i sin(tau) (Q P). Term count grows at most 2x.
QubitOperator dress(const QubitOperator& op, const PauliWord& generator,
                    double tau);

/// Sequential dressing, first entangler applied first.
QubitOperator dress(const QubitOperator& op, const QCCAnsatz& ansatz);

/// Expectation of the sequentially dressed operator on a mean-field state.
double qcc_energy(const QubitOperator& op, const QCCAnsatz& ansatz,
                  const MeanFieldState& state);

struct TauOptimum {
  double tau = 0.0;     // radians, in [-pi, pi]
  double energy = 0.0;  // E0 + D/2 - sqrt((D/2)^2 + slope^2)
};

/// Global minimizer of the single-generator energy
/// E(tau) = e0 + slope sin(tau) + (denom/2)(1 - cos(tau)).
TauOptimum optimal_tau_single(double e0, double slope, double denom);

struct OptimizeOptions {
  double grad_tol = 1e-8;  // infinity norm of dE/dtau
  int max_evals = 4000;    // energy/gradient-component evaluation budget
};

struct OptimizeResult {
  QCCAnsatz ansatz;
  double energy = 0.0;
  double grad_norm = 0.0;  // infinity norm at the returned point
  bool converged = false;
  int n_evals = 0;
};

/// Minimize the QCC energy over the amplitudes of the given generators,
/// starting from all zeros. Quasi-Newton with exact commutator gradients;
/// falls back to closed-form coordinate sweeps when a step fails. The
/// returned energy never exceeds the all-zeros value. converged = false
/// means the evaluation budget ran out (best-so-far returned).
OptimizeResult optimize_amplitudes(const QubitOperator& op,
                                   const std::vector<PauliWord>& generators,
                                   const MeanFieldState& state,
                                   const OptimizeOptions& options = {});

/// Terms whose x-mask lies in the xor-closure of the generators' x-masks.
/// Only these influence the dressed expectation on any mean-field state,
/// so amplitude optimization can run on this restriction exactly.
QubitOperator restrict_to_energy_sector(const QubitOperator& op,
                                        const std::vector<PauliWord>& generators);

}  // namespace iqcc

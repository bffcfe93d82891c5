/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "iqcc/dis.hpp"
#include "iqcc/mean_field.hpp"
#include "iqcc/pauli.hpp"

namespace iqcc {

/// Quantities the a posteriori corrections are built from: the reference
/// energy and the DIS groups with gradients, couplings and denominators.
struct CorrectionInput {
  double e0 = 0.0;
  std::vector<DISGroup> groups;
};

struct En2Result {
  double delta = 0.0;
  int n_skipped = 0;  // groups excluded for near-zero denominators
};

/// Second-order perturbative correction -sum_j omega_j^2 / D_j. Groups with
/// |D_j| below the divergence floor are skipped and counted.
En2Result en2(const CorrectionInput& input, double divergence_floor = 1e-10);

/// Infinite-order per-group closed form
/// sum_j [ D_j/2 - sqrt((D_j/2)^2 + omega_j^2) ]; finite at D -> 0.
double duc(const CorrectionInput& input);

struct BWOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

struct BWResult {
  double delta = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Self-consistent correction dE = -sum_j omega_j^2 / (D_j - dE), iterated
/// from 0 with damping on oscillation; a bracketed solve takes over when the
/// plain iteration stalls (|f'| >= 1 near degeneracy). Returns the last
/// iterate with converged = false when every strategy is exhausted.
BWResult bw(const CorrectionInput& input, const BWOptions& options = {});

struct CiResult {
  double energy = 0.0;           // lowest eigenvalue, <= e0
  Eigen::VectorXcd eigenvector;  // over {reference} + groups, in given order
};

/// Lowest eigenpair of the (N+1)x(N+1) matrix <0|X_i H X_j|0> over the
/// reference and the DIS flips.
CiResult ci_in_dis(const IsingDecomposition& dec, const MeanFieldState& state,
                   const std::vector<DISGroup>& groups, size_t dim_cap = 4000);
CiResult ci_in_dis(const QubitOperator& op, const MeanFieldState& state,
                   const std::vector<DISGroup>& groups, size_t dim_cap = 4000);

struct EffHeffOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

/// Self-consistent lowest eigenvalue of h_eff(E) = h - b^dag (diag C - E)^-1 b
/// with the block spanned by the reference plus the first m-1 groups (pass
/// groups in ranked order) and diagonal-only external resolvent. m = 1
/// reproduces bw; m = N+1 reproduces ci_in_dis.
double effective_hamiltonian(const IsingDecomposition& dec,
                             const MeanFieldState& state,
                             const std::vector<DISGroup>& groups, size_t m,
                             const EffHeffOptions& options = {});
double effective_hamiltonian(const QubitOperator& op,
                             const MeanFieldState& state,
                             const std::vector<DISGroup>& groups, size_t m,
                             const EffHeffOptions& options = {});

}  // namespace iqcc

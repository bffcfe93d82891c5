/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "iqcc/mean_field.hpp"
#include "iqcc/pauli.hpp"

namespace iqcc {

/// Dense 2^n-amplitude wavefunction. Basis index bit i is qubit i;
/// bit set = z eigenvalue -1.
struct StateVector {
  uint32_t n_qubits = 0;
  std::vector<Complex> amplitudes;

  static StateVector zero(uint32_t n_qubits);
  /// Computational basis state matching a mean-field state.
  static StateVector basis(const MeanFieldState& state);

  size_t dim() const { return amplitudes.size(); }
  double norm() const;
  void normalize();
};

Complex inner(const StateVector& a, const StateVector& b);

/// Exact H|v> via per-term bit-flip/phase action; O(#terms * 2^n).
/// With threads > 1 the output range is chunked; results are identical to
/// the sequential evaluation.
StateVector apply(const QubitOperator& op, const StateVector& v,
                  int threads = 1);

/// <v| op |v> (real part; the imaginary part of a hermitian sandwich
/// vanishes).
double rayleigh(const QubitOperator& op, const StateVector& v);

/// exp(-i tau P / 2) |v> = cos(tau/2) v - i sin(tau/2) P v.
StateVector apply_exponential(const PauliWord& generator, double tau,
                              const StateVector& v);

Eigen::MatrixXcd dense_matrix(const QubitOperator& op);

struct OracleOptions {
  uint32_t dense_threshold = 10;  // dense diagonalization up to this size
  uint32_t max_qubits = 14;       // hard cap (Lanczos above the threshold)
  uint64_t seed = 7;              // Lanczos start vector
  double residual_tol = 1e-9;
  int threads = 1;
};

struct GroundState {
  double energy = 0.0;
  StateVector vector;
};

/// Lowest eigenpair. Dense up to dense_threshold qubits, restarted Lanczos
/// with full reorthogonalization beyond; residual ||Hv - Ev|| < residual_tol
/// is verified before returning.
GroundState ground_energy(const QubitOperator& op,
                          const OracleOptions& options = {});

}  // namespace iqcc

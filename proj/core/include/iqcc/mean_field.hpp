/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <string>
#include <vector>

#include "iqcc/pauli.hpp"

namespace iqcc {

/// Direct-product state: a joint +-1 eigenstate of every single-qubit z.
class MeanFieldState {
 public:
  MeanFieldState() = default;
  /// All-(+1) state on n qubits.
  explicit MeanFieldState(uint32_t n_qubits) : eig_(n_qubits, +1) {}
  explicit MeanFieldState(std::vector<int8_t> eigenvalues);

  /// Text form over {+,-}, leftmost character = qubit 0.
  static MeanFieldState from_string(const std::string& text);
  std::string str() const;

  uint32_t n_qubits() const { return static_cast<uint32_t>(eig_.size()); }
  int eigenvalue(uint32_t q) const { return eig_[q]; }
  void set_eigenvalue(uint32_t q, int v);

  /// Eigenvalues negated on the set bits of the flip mask.
  MeanFieldState flipped(const QubitMask& flip) const;

  /// Qubits with eigenvalue -1 (n_qubits <= 64 only).
  uint64_t minus_bits() const;

  bool operator==(const MeanFieldState&) const = default;

 private:
  std::vector<int8_t> eig_;
};

/// Product of eigenvalues over the set bits of z_mask; +1 for the empty mask.
double z_product(const QubitMask& z_mask, const MeanFieldState& state);

/// <state| I(z) |state> for one Ising factor (streams the sorted term list,
/// compensated summation).
Complex ising_expectation(const IsingComponent& comp,
                          const MeanFieldState& state);

/// <state| op |state>. Only empty-x terms contribute; throws if the
/// imaginary residue exceeds imag_tol (a phase-corrupted or
/// non-hermitian operator).
double expectation(const QubitOperator& op, const MeanFieldState& state,
                   double imag_tol = 1e-12);
double expectation(const IsingDecomposition& dec, const MeanFieldState& state,
                   double imag_tol = 1e-12);

/// <j| I_0(z) |j> where |j> is the reference flipped on k. k = 0 gives E_0.
/// `ising0` must be the component with empty flip mask.
double excited_energy(const IsingComponent& ising0, const MeanFieldState& state,
                      const QubitMask& flip);

/// H_{0k} = <0| H X_k |0>, evaluated from the Ising component of flip k.
Complex coupling(const IsingDecomposition& dec, const MeanFieldState& state,
                 const QubitMask& k);
Complex coupling(const QubitOperator& op, const MeanFieldState& state,
                 const QubitMask& k);

/// H_{ij} = <0| X_i H X_j |0>: the component of flip (i xor j) evaluated on
/// the reference flipped by i.
Complex pair_coupling(const IsingDecomposition& dec, const MeanFieldState& state,
                      const QubitMask& i, const QubitMask& j);
Complex pair_coupling(const QubitOperator& op, const MeanFieldState& state,
                      const QubitMask& i, const QubitMask& j);

}  // namespace iqcc

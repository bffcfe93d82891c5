/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include "iqcc/fcidump.hpp"
#include "iqcc/mean_field.hpp"
#include "iqcc/pauli.hpp"

namespace iqcc {

/// Spin-orbital-to-qubit layouts. Interleaved pairs spin orbitals as
/// (1a, 1b, 2a, 2b, ...); blocked puts all alpha first.
enum class SpinOrbitalOrdering { interleaved, blocked };

SpinOrbitalOrdering parse_ordering(const std::string& name);
std::string ordering_name(SpinOrbitalOrdering ordering);

/// Qubit carrying spatial orbital p with spin s (0 = alpha, 1 = beta).
uint32_t spin_orbital_qubit(uint32_t p, uint32_t s, uint32_t n_orbitals,
                            SpinOrbitalOrdering ordering);

/// Hermitian qubit image of the second-quantized Hamiltonian on
/// 2 * n_orbitals qubits. Occupied spin orbitals map to z eigenvalue -1.
QubitOperator jordan_wigner(const IntegralSet& integrals,
                            SpinOrbitalOrdering ordering =
                                SpinOrbitalOrdering::interleaved);

/// Aufbau reference: -1 on the qubits of the n_electrons lowest spin
/// orbitals (alpha before beta at equal orbital), +1 elsewhere.
MeanFieldState hf_reference(const IntegralSet& integrals,
                            SpinOrbitalOrdering ordering =
                                SpinOrbitalOrdering::interleaved);

/// Hartree-Fock determinant energy evaluated directly from the integrals.
double hf_energy(const IntegralSet& integrals);

/// JW images of the particle-number and S_z symmetry operators.
QubitOperator number_operator(uint32_t n_orbitals, SpinOrbitalOrdering ordering);
QubitOperator sz_operator(uint32_t n_orbitals, SpinOrbitalOrdering ordering);

}  // namespace iqcc

/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/jordan_wigner.hpp"

#include <cmath>
#include <stdexcept>

namespace iqcc {

SpinOrbitalOrdering parse_ordering(const std::string& name) {
  if (name == "interleaved") return SpinOrbitalOrdering::interleaved;
  if (name == "blocked") return SpinOrbitalOrdering::blocked;
  throw std::invalid_argument("unknown spin ordering '" + name +
                              "' (expected interleaved|blocked)");
}

std::string ordering_name(SpinOrbitalOrdering ordering) {
  return ordering == SpinOrbitalOrdering::interleaved ? "interleaved"
                                                      : "blocked";
}

uint32_t spin_orbital_qubit(uint32_t p, uint32_t s, uint32_t n_orbitals,
                            SpinOrbitalOrdering ordering) {
  return ordering == SpinOrbitalOrdering::interleaved ? 2 * p + s
                                                      : p + s * n_orbitals;
}

namespace {

// Ladder operators under JW with occupied = |-1>:
//   a_q  = Z(<q) (x_q + i y_q)/2,   i y = z x
//   a+_q = Z(<q) (x_q - i y_q)/2
QubitOperator annihilate(uint32_t qubit, uint32_t n_qubits) {
  QubitMask prefix(n_qubits);
  for (uint32_t j = 0; j < qubit; ++j) prefix.set(j);
  QubitMask x(n_qubits);
  x.set(qubit);
  QubitMask z_with = prefix;
  z_with.set(qubit);

  QubitOperator op(n_qubits);
  op.add_term(PauliWord::from_masks(prefix, x), {0.5, 0.0});
  op.add_term(PauliWord::from_masks(z_with, x), {0.5, 0.0});
  return op;
}

QubitOperator create(uint32_t qubit, uint32_t n_qubits) {
  QubitMask prefix(n_qubits);
  for (uint32_t j = 0; j < qubit; ++j) prefix.set(j);
  QubitMask x(n_qubits);
  x.set(qubit);
  QubitMask z_with = prefix;
  z_with.set(qubit);

  QubitOperator op(n_qubits);
  op.add_term(PauliWord::from_masks(prefix, x), {0.5, 0.0});
  op.add_term(PauliWord::from_masks(z_with, x), {-0.5, 0.0});
  return op;
}

// (1 - z_q)/2, the occupation of one spin orbital
QubitOperator occupation(uint32_t qubit, uint32_t n_qubits) {
  QubitOperator op(n_qubits);
  op.add_identity({0.5, 0.0});
  QubitMask z(n_qubits);
  z.set(qubit);
  op.add_term(PauliWord::from_masks(z, QubitMask(n_qubits)), {-0.5, 0.0});
  return op;
}

}  // namespace

QubitOperator jordan_wigner(const IntegralSet& integrals,
                            SpinOrbitalOrdering ordering) {
  const uint32_t n_orb = integrals.n_orbitals();
  const uint32_t n_qubits = 2 * n_orb;
  auto qubit = [&](uint32_t p, uint32_t s) {
    return spin_orbital_qubit(p, s, n_orb, ordering);
  };

  QubitOperator h(n_qubits);
  if (integrals.core_energy() != 0.0) h.add_identity(integrals.core_energy());

  for (uint32_t p = 0; p < n_orb; ++p) {
    for (uint32_t q = 0; q < n_orb; ++q) {
      const double hpq = integrals.one_body(p, q);
      if (hpq == 0.0) continue;
      for (uint32_t s = 0; s < 2; ++s) {
        QubitOperator excitation =
            create(qubit(p, s), n_qubits) * annihilate(qubit(q, s), n_qubits);
        h.add_scaled(excitation, hpq);
      }
    }
  }

  // 1/2 sum_{pqrs} (pq|rs) a+_{p s1} a+_{r s2} a_{s s2} a_{q s1}
  for (uint32_t p = 0; p < n_orb; ++p) {
    for (uint32_t q = 0; q < n_orb; ++q) {
      for (uint32_t r = 0; r < n_orb; ++r) {
        for (uint32_t s = 0; s < n_orb; ++s) {
          const double v = integrals.two_body(p, q, r, s);
          if (v == 0.0) continue;
          for (uint32_t s1 = 0; s1 < 2; ++s1) {
            for (uint32_t s2 = 0; s2 < 2; ++s2) {
              const uint32_t qp = qubit(p, s1), qq = qubit(q, s1);
              const uint32_t qr = qubit(r, s2), qs = qubit(s, s2);
              if (qp == qr || qq == qs) continue;  // a+a+ / aa on one mode
              QubitOperator term = create(qp, n_qubits) * create(qr, n_qubits) *
                                   annihilate(qs, n_qubits) *
                                   annihilate(qq, n_qubits);
              h.add_scaled(term, 0.5 * v);
            }
          }
        }
      }
    }
  }
  h.compact(0.0);
  return h;
}

MeanFieldState hf_reference(const IntegralSet& integrals,
                            SpinOrbitalOrdering ordering) {
  const uint32_t n_orb = integrals.n_orbitals();
  const uint32_t n_elec = integrals.n_electrons();
  if (n_elec > 2 * n_orb)
    throw std::invalid_argument("electron count exceeds spin-orbital count");
  MeanFieldState state(2 * n_orb);
  for (uint32_t e = 0; e < n_elec; ++e) {
    const uint32_t p = e / 2, s = e % 2;  // aufbau, alpha first at equal p
    state.set_eigenvalue(spin_orbital_qubit(p, s, n_orb, ordering), -1);
  }
  return state;
}

double hf_energy(const IntegralSet& integrals) {
  const uint32_t n_elec = integrals.n_electrons();
  // occupied spin orbitals under aufbau: (orbital e/2, spin e%2)
  double e = integrals.core_energy();
  for (uint32_t a = 0; a < n_elec; ++a) {
    e += integrals.one_body(a / 2, a / 2);
    for (uint32_t b = 0; b < a; ++b) {
      e += integrals.two_body(a / 2, a / 2, b / 2, b / 2);
      if (a % 2 == b % 2)
        e -= integrals.two_body(a / 2, b / 2, b / 2, a / 2);
    }
  }
  return e;
}

QubitOperator number_operator(uint32_t n_orbitals,
                              SpinOrbitalOrdering ordering) {
  const uint32_t n_qubits = 2 * n_orbitals;
  QubitOperator op(n_qubits);
  for (uint32_t p = 0; p < n_orbitals; ++p)
    for (uint32_t s = 0; s < 2; ++s)
      op.add_scaled(occupation(spin_orbital_qubit(p, s, n_orbitals, ordering),
                               n_qubits),
                    1.0);
  return op;
}

QubitOperator sz_operator(uint32_t n_orbitals, SpinOrbitalOrdering ordering) {
  const uint32_t n_qubits = 2 * n_orbitals;
  QubitOperator op(n_qubits);
  for (uint32_t p = 0; p < n_orbitals; ++p) {
    op.add_scaled(occupation(spin_orbital_qubit(p, 0, n_orbitals, ordering),
                             n_qubits),
                  0.5);
    op.add_scaled(occupation(spin_orbital_qubit(p, 1, n_orbitals, ordering),
                             n_qubits),
                  -0.5);
  }
  return op;
}

}  // namespace iqcc

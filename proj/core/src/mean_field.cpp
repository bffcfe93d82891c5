/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iqcc {

namespace {

// Kahan-compensated accumulator; keeps streaming sums independent of
// incidental container layout at full double precision.
struct Accumulator {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct ComplexAccumulator {
  Accumulator re, im;
  void add(Complex v) {
    re.add(v.real());
    im.add(v.imag());
  }
  Complex value() const { return {re.sum, im.sum}; }
};

void check_width(uint32_t a, uint32_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": qubit-count mismatch");
}

}  // namespace

MeanFieldState::MeanFieldState(std::vector<int8_t> eigenvalues)
    : eig_(std::move(eigenvalues)) {
  for (int8_t v : eig_)
    if (v != 1 && v != -1)
      throw std::invalid_argument("mean-field eigenvalues must be +-1");
}

MeanFieldState MeanFieldState::from_string(const std::string& text) {
  std::vector<int8_t> eig;
  eig.reserve(text.size());
  for (char c : text) {
    if (c == '+')
      eig.push_back(+1);
    else if (c == '-')
      eig.push_back(-1);
    else
      throw std::invalid_argument(
          std::string("bad reference character '") + c + "' (expected + or -)");
  }
  return MeanFieldState(std::move(eig));
}

std::string MeanFieldState::str() const {
  std::string out(eig_.size(), '+');
  for (size_t q = 0; q < eig_.size(); ++q)
    if (eig_[q] < 0) out[q] = '-';
  return out;
}

void MeanFieldState::set_eigenvalue(uint32_t q, int v) {
  if (v != 1 && v != -1)
    throw std::invalid_argument("mean-field eigenvalues must be +-1");
  eig_[q] = static_cast<int8_t>(v);
}

MeanFieldState MeanFieldState::flipped(const QubitMask& flip) const {
  check_width(n_qubits(), flip.n_qubits(), "state flip");
  MeanFieldState out = *this;
  for (uint32_t q = 0; q < n_qubits(); ++q)
    if (flip.test(q)) out.eig_[q] = static_cast<int8_t>(-out.eig_[q]);
  return out;
}

uint64_t MeanFieldState::minus_bits() const {
  if (n_qubits() > 64)
    throw std::invalid_argument("minus_bits limited to 64 qubits");
  uint64_t bits = 0;
  for (uint32_t q = 0; q < n_qubits(); ++q)
    if (eig_[q] < 0) bits |= uint64_t{1} << q;
  return bits;
}

double z_product(const QubitMask& z_mask, const MeanFieldState& state) {
  check_width(z_mask.n_qubits(), state.n_qubits(), "z product");
  // Parity of -1 eigenvalues under the mask.
  int negatives = 0;
  for (uint32_t q = 0; q < z_mask.n_qubits(); ++q)
    if (z_mask.test(q) && state.eigenvalue(q) < 0) ++negatives;
  return (negatives & 1) ? -1.0 : 1.0;
}

Complex ising_expectation(const IsingComponent& comp,
                          const MeanFieldState& state) {
  ComplexAccumulator acc;
  for (const auto& [z, coeff] : comp.terms)
    acc.add(coeff * z_product(z, state));
  return acc.value();
}

double expectation(const IsingDecomposition& dec, const MeanFieldState& state,
                   double imag_tol) {
  check_width(dec.n_qubits(), state.n_qubits(), "expectation");
  const IsingComponent* ising0 = dec.find(QubitMask(dec.n_qubits()));
  if (!ising0) return 0.0;
  const Complex e = ising_expectation(*ising0, state);
  if (std::abs(e.imag()) > imag_tol)
    throw std::runtime_error(
        "expectation has non-negligible imaginary part (" +
        std::to_string(e.imag()) + "); operator is not hermitian");
  return e.real();
}

double expectation(const QubitOperator& op, const MeanFieldState& state,
                   double imag_tol) {
  check_width(op.n_qubits(), state.n_qubits(), "expectation");
  // Canonical order: collect empty-x terms, sort by z-mask, then sum.
  std::vector<std::pair<QubitMask, Complex>> diag;
  for (const auto& [word, coeff] : op.terms())
    if (!word.has_x()) diag.emplace_back(word.z_mask(), coeff);
  std::sort(diag.begin(), diag.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ComplexAccumulator acc;
  for (const auto& [z, coeff] : diag) acc.add(coeff * z_product(z, state));
  const Complex e = acc.value();
  if (std::abs(e.imag()) > imag_tol)
    throw std::runtime_error(
        "expectation has non-negligible imaginary part (" +
        std::to_string(e.imag()) + "); operator is not hermitian");
  return e.real();
}

double excited_energy(const IsingComponent& ising0, const MeanFieldState& state,
                      const QubitMask& flip) {
  if (ising0.flip.any())
    throw std::invalid_argument("excited_energy expects the k = 0 component");
  return ising_expectation(ising0, state.flipped(flip)).real();
}

Complex coupling(const IsingDecomposition& dec, const MeanFieldState& state,
                 const QubitMask& k) {
  if (k.none())
    throw std::invalid_argument("coupling requires a nonzero flip index");
  const IsingComponent* comp = dec.find(k);
  if (!comp) return {0.0, 0.0};
  return ising_expectation(*comp, state);
}

Complex coupling(const QubitOperator& op, const MeanFieldState& state,
                 const QubitMask& k) {
  return coupling(ising_decompose(op), state, k);
}

Complex pair_coupling(const IsingDecomposition& dec, const MeanFieldState& state,
                      const QubitMask& i, const QubitMask& j) {
  const IsingComponent* comp = dec.find(i ^ j);
  if (!comp) return {0.0, 0.0};
  return ising_expectation(*comp, state.flipped(i));
}

Complex pair_coupling(const QubitOperator& op, const MeanFieldState& state,
                      const QubitMask& i, const QubitMask& j) {
  return pair_coupling(ising_decompose(op), state, i, j);
}

}  // namespace iqcc

/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace iqcc {

using Complex = std::complex<double>;

/// Subset of qubit indices, packed into 64-bit blocks. Used for flip
/// indices, z-masks of Ising terms, and active-space membership.
class QubitMask {
 public:
  QubitMask() = default;
  explicit QubitMask(uint32_t n_qubits)
      : n_(n_qubits), blocks_(block_count(n_qubits), 0) {}

  static QubitMask from_bits(uint32_t n_qubits, uint64_t low_bits);
  static QubitMask from_indices(uint32_t n_qubits,
                                std::span<const uint32_t> indices);

  uint32_t n_qubits() const { return n_; }
  uint32_t n_blocks() const { return static_cast<uint32_t>(blocks_.size()); }
  std::span<const uint64_t> blocks() const { return blocks_; }

  bool test(uint32_t q) const {
    return (blocks_[q >> 6] >> (q & 63)) & 1u;
  }
  void set(uint32_t q, bool value = true) {
    const uint64_t bit = uint64_t{1} << (q & 63);
    if (value)
      blocks_[q >> 6] |= bit;
    else
      blocks_[q >> 6] &= ~bit;
  }

  bool none() const;
  bool any() const { return !none(); }
  uint32_t count() const;
  /// Index of the lowest set bit; n_qubits() when empty.
  uint32_t lowest_set_bit() const;

  uint64_t low64() const { return blocks_.empty() ? 0 : blocks_[0]; }
  std::vector<uint32_t> indices() const;

  QubitMask& operator^=(const QubitMask& other);
  QubitMask& operator&=(const QubitMask& other);
  QubitMask& operator|=(const QubitMask& other);
  friend QubitMask operator^(QubitMask a, const QubitMask& b) { return a ^= b; }
  friend QubitMask operator&(QubitMask a, const QubitMask& b) { return a &= b; }
  friend QubitMask operator|(QubitMask a, const QubitMask& b) { return a |= b; }

  bool operator==(const QubitMask& other) const = default;
  /// Numeric order (treating the mask as a little-endian integer).
  bool operator<(const QubitMask& other) const;

  /// True iff |this & other| is odd.
  bool overlap_is_odd(const QubitMask& other) const;
  bool is_subset_of(const QubitMask& other) const;
  uint32_t count_outside(const QubitMask& other) const;

  static uint32_t block_count(uint32_t n_qubits) {
    return (n_qubits + 63) >> 6;
  }

 private:
  uint32_t n_ = 0;
  std::vector<uint64_t> blocks_;
};

struct QubitMaskHash {
  size_t operator()(const QubitMask& m) const noexcept;
};

/// Pauli word in ZX-canonical form: the operator Z(z_mask) * X(x_mask),
/// Z factors on the left. A y on qubit i has bit i set in both masks;
/// the accompanying phase is carried by the owning term's coefficient
/// (y = -i z x). Both masks live in one contiguous buffer.
class PauliWord {
 public:
  PauliWord() = default;
  /// Identity word on n qubits.
  explicit PauliWord(uint32_t n_qubits)
      : n_(n_qubits), zx_(2 * QubitMask::block_count(n_qubits), 0) {}

  static PauliWord from_masks(const QubitMask& z, const QubitMask& x);
  /// Convenience for n_qubits <= 64.
  static PauliWord from_bits(uint32_t n_qubits, uint64_t z, uint64_t x);

  uint32_t n_qubits() const { return n_; }
  uint32_t n_blocks() const { return QubitMask::block_count(n_); }

  std::span<const uint64_t> z_blocks() const {
    return {zx_.data(), n_blocks()};
  }
  std::span<const uint64_t> x_blocks() const {
    return {zx_.data() + n_blocks(), n_blocks()};
  }
  QubitMask z_mask() const;
  QubitMask x_mask() const;

  bool z_bit(uint32_t q) const { return (zx_[q >> 6] >> (q & 63)) & 1u; }
  bool x_bit(uint32_t q) const {
    return (zx_[n_blocks() + (q >> 6)] >> (q & 63)) & 1u;
  }
  void set_z(uint32_t q, bool value = true);
  void set_x(uint32_t q, bool value = true);

  bool is_identity() const;
  /// Number of qubits carrying a y factor, i.e. |z & x|.
  uint32_t y_count() const;
  bool has_x() const;

  bool commutes_with(const PauliWord& other) const;

  /// Letter on qubit q: 'I', 'X', 'Y' or 'Z'.
  char letter(uint32_t q) const;
  std::string str() const;

  bool operator==(const PauliWord& other) const = default;
  /// Lexicographic by (x_mask, z_mask), both as little-endian integers.
  static bool lex_less_xz(const PauliWord& a, const PauliWord& b);

 private:
  friend struct PauliWordHash;
  friend PauliWord word_product(const PauliWord&, const PauliWord&, int&);

  uint32_t n_ = 0;
  std::vector<uint64_t> zx_;  // z blocks, then x blocks
};

struct PauliWordHash {
  size_t operator()(const PauliWord& w) const noexcept;
};

/// One addend of a qubit operator: coeff * Z(z) X(x). The coefficient is
/// the ZX-form value; the plain Pauli coefficient (with y factors made
/// explicit) is coeff * i^y_count.
struct PauliTerm {
  PauliWord word;
  Complex coeff{0.0, 0.0};
};

/// Exact Pauli-group product with the tracked {+-1, +-i} phase folded
/// into the coefficient. Result stays ZX-canonical.
PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);

/// ZX-form coefficient of the adjoint of a single term on the same word.
Complex adjoint_coeff(const PauliWord& word, Complex coeff);

/// Plain-Pauli coefficient (XYZ alphabet) of a stored term.
Complex pauli_coeff(const PauliWord& word, Complex zx_coeff);
/// Inverse of pauli_coeff.
Complex zx_coeff(const PauliWord& word, Complex pauli_coeff);

/// Sparse sum of Pauli words with complex ZX-form coefficients.
class QubitOperator {
 public:
  using TermMap = std::unordered_map<PauliWord, Complex, PauliWordHash>;

  QubitOperator() = default;
  explicit QubitOperator(uint32_t n_qubits) : n_(n_qubits) {}

  uint32_t n_qubits() const { return n_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Complex coefficient(const PauliWord& word) const;
  void add_term(const PauliWord& word, Complex coeff);
  void add_term(const PauliTerm& term) { add_term(term.word, term.coeff); }
  void add_identity(Complex coeff) { add_term(PauliWord(n_), coeff); }

  /// this += factor * source. Plain coefficient merge, no pruning.
  void add_scaled(const QubitOperator& source, Complex factor);

  QubitOperator& operator*=(Complex factor);

  /// Drop terms with |coeff| <= drop_tol (exact zeros only by default).
  void compact(double drop_tol = 0.0);

  QubitOperator adjoint() const;
  /// Max per-coefficient deviation from the adjoint.
  double hermiticity_deviation() const;

  /// Deterministic view: terms sorted lexicographically by (x, z).
  std::vector<PauliTerm> sorted_terms() const;

  void reserve(size_t n) { terms_.reserve(n); }

 private:
  uint32_t n_ = 0;
  TermMap terms_;
};

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);

bool is_hermitian(const QubitOperator& op, double tol);

/// One flip-index group of the regrouped operator: the generalized Ising
/// factor I_k(z) that multiplies the X string with mask k.
struct IsingComponent {
  QubitMask flip;                                    // x-mask k
  std::vector<std::pair<QubitMask, Complex>> terms;  // (z-mask, coeff), sorted
};

/// Partition of an operator by x-mask. Components are sorted by flip
/// index; component 0 (when present) is the pure Ising part.
class IsingDecomposition {
 public:
  IsingDecomposition() = default;
  explicit IsingDecomposition(uint32_t n_qubits) : n_(n_qubits) {}

  uint32_t n_qubits() const { return n_; }
  const std::vector<IsingComponent>& components() const { return comps_; }
  /// nullptr when the operator has no terms with this x-mask.
  const IsingComponent* find(const QubitMask& flip) const;

  friend IsingDecomposition ising_decompose(const QubitOperator& op);

 private:
  uint32_t n_ = 0;
  std::vector<IsingComponent> comps_;
};

/// Lossless regrouping of op by x-mask.
IsingDecomposition ising_decompose(const QubitOperator& op);
/// Exact inverse of ising_decompose.
QubitOperator reassemble(const IsingDecomposition& dec);

}  // namespace iqcc

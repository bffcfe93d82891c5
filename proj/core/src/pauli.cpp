/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/pauli.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace iqcc {

namespace {

void check_same_width(uint32_t a, uint32_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": qubit-count mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
}

bool parity_of_and(std::span<const uint64_t> a, std::span<const uint64_t> b) {
  uint64_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1;
}

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// i^p for p in [0,4)
Complex i_power(unsigned p) {
  switch (p & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// QubitMask

QubitMask QubitMask::from_bits(uint32_t n_qubits, uint64_t low_bits) {
  QubitMask m(n_qubits);
  if (n_qubits == 0) {
    if (low_bits) throw std::invalid_argument("mask bits beyond qubit count");
    return m;
  }
  if (n_qubits < 64 && (low_bits >> n_qubits))
    throw std::invalid_argument("mask bits beyond qubit count");
  if (!m.blocks_.empty()) m.blocks_[0] = low_bits;
  return m;
}

QubitMask QubitMask::from_indices(uint32_t n_qubits,
                                  std::span<const uint32_t> indices) {
  QubitMask m(n_qubits);
  for (uint32_t q : indices) {
    if (q >= n_qubits)
      throw std::invalid_argument("qubit index " + std::to_string(q) +
                                  " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
    m.set(q);
  }
  return m;
}

bool QubitMask::none() const {
  for (uint64_t b : blocks_)
    if (b) return false;
  return true;
}

uint32_t QubitMask::count() const {
  uint32_t c = 0;
  for (uint64_t b : blocks_) c += std::popcount(b);
  return c;
}

uint32_t QubitMask::lowest_set_bit() const {
  for (size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i]) return static_cast<uint32_t>(i * 64 + std::countr_zero(blocks_[i]));
  return n_;
}

std::vector<uint32_t> QubitMask::indices() const {
  std::vector<uint32_t> out;
  for (uint32_t q = 0; q < n_; ++q)
    if (test(q)) out.push_back(q);
  return out;
}

QubitMask& QubitMask::operator^=(const QubitMask& other) {
  check_same_width(n_, other.n_, "mask xor");
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] ^= other.blocks_[i];
  return *this;
}

QubitMask& QubitMask::operator&=(const QubitMask& other) {
  check_same_width(n_, other.n_, "mask and");
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= other.blocks_[i];
  return *this;
}

QubitMask& QubitMask::operator|=(const QubitMask& other) {
  check_same_width(n_, other.n_, "mask or");
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= other.blocks_[i];
  return *this;
}

bool QubitMask::operator<(const QubitMask& other) const {
  check_same_width(n_, other.n_, "mask compare");
  for (size_t i = blocks_.size(); i-- > 0;) {
    if (blocks_[i] != other.blocks_[i]) return blocks_[i] < other.blocks_[i];
  }
  return false;
}

bool QubitMask::overlap_is_odd(const QubitMask& other) const {
  check_same_width(n_, other.n_, "mask overlap");
  return parity_of_and(blocks_, other.blocks_);
}

bool QubitMask::is_subset_of(const QubitMask& other) const {
  check_same_width(n_, other.n_, "mask subset");
  for (size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i] & ~other.blocks_[i]) return false;
  return true;
}

uint32_t QubitMask::count_outside(const QubitMask& other) const {
  check_same_width(n_, other.n_, "mask difference");
  uint32_t c = 0;
  for (size_t i = 0; i < blocks_.size(); ++i)
    c += std::popcount(blocks_[i] & ~other.blocks_[i]);
  return c;
}

size_t QubitMaskHash::operator()(const QubitMask& m) const noexcept {
  uint64_t h = splitmix64(m.n_qubits());
  for (uint64_t b : m.blocks()) h = splitmix64(h ^ b);
  return static_cast<size_t>(h);
}

// ---------------------------------------------------------------------------
// PauliWord

PauliWord PauliWord::from_masks(const QubitMask& z, const QubitMask& x) {
  check_same_width(z.n_qubits(), x.n_qubits(), "word masks");
  PauliWord w(z.n_qubits());
  const uint32_t nb = w.n_blocks();
  std::copy(z.blocks().begin(), z.blocks().end(), w.zx_.begin());
  std::copy(x.blocks().begin(), x.blocks().end(), w.zx_.begin() + nb);
  return w;
}

PauliWord PauliWord::from_bits(uint32_t n_qubits, uint64_t z, uint64_t x) {
  return from_masks(QubitMask::from_bits(n_qubits, z),
                    QubitMask::from_bits(n_qubits, x));
}

QubitMask PauliWord::z_mask() const {
  QubitMask m(n_);
  std::copy(z_blocks().begin(), z_blocks().end(),
            const_cast<uint64_t*>(m.blocks().data()));
  return m;
}

QubitMask PauliWord::x_mask() const {
  QubitMask m(n_);
  std::copy(x_blocks().begin(), x_blocks().end(),
            const_cast<uint64_t*>(m.blocks().data()));
  return m;
}

void PauliWord::set_z(uint32_t q, bool value) {
  const uint64_t bit = uint64_t{1} << (q & 63);
  if (value)
    zx_[q >> 6] |= bit;
  else
    zx_[q >> 6] &= ~bit;
}

void PauliWord::set_x(uint32_t q, bool value) {
  const uint64_t bit = uint64_t{1} << (q & 63);
  if (value)
    zx_[n_blocks() + (q >> 6)] |= bit;
  else
    zx_[n_blocks() + (q >> 6)] &= ~bit;
}

bool PauliWord::is_identity() const {
  for (uint64_t b : zx_)
    if (b) return false;
  return true;
}

uint32_t PauliWord::y_count() const {
  const uint32_t nb = n_blocks();
  uint32_t c = 0;
  for (uint32_t i = 0; i < nb; ++i) c += std::popcount(zx_[i] & zx_[nb + i]);
  return c;
}

bool PauliWord::has_x() const {
  const uint32_t nb = n_blocks();
  for (uint32_t i = 0; i < nb; ++i)
    if (zx_[nb + i]) return true;
  return false;
}

bool PauliWord::commutes_with(const PauliWord& other) const {
  check_same_width(n_, other.n_, "word commutator");
  // Symplectic form: words commute iff |z1 & x2| + |x1 & z2| is even.
  return !(parity_of_and(z_blocks(), other.x_blocks()) ^
           parity_of_and(x_blocks(), other.z_blocks()));
}

char PauliWord::letter(uint32_t q) const {
  const bool z = z_bit(q), x = x_bit(q);
  if (z && x) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliWord::str() const {
  std::string out;
  for (uint32_t q = 0; q < n_; ++q) {
    const char c = letter(q);
    if (c == 'I') continue;
    if (!out.empty()) out += ' ';
    out += c;
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

bool PauliWord::lex_less_xz(const PauliWord& a, const PauliWord& b) {
  check_same_width(a.n_, b.n_, "word compare");
  const uint32_t nb = a.n_blocks();
  for (uint32_t i = nb; i-- > 0;) {  // x part, high block first
    if (a.zx_[nb + i] != b.zx_[nb + i]) return a.zx_[nb + i] < b.zx_[nb + i];
  }
  for (uint32_t i = nb; i-- > 0;) {  // z part
    if (a.zx_[i] != b.zx_[i]) return a.zx_[i] < b.zx_[i];
  }
  return false;
}

size_t PauliWordHash::operator()(const PauliWord& w) const noexcept {
  uint64_t h = splitmix64(w.n_);
  for (uint64_t b : w.zx_) h = splitmix64(h ^ b);
  return static_cast<size_t>(h);
}

// ---------------------------------------------------------------------------
// Term algebra

PauliWord word_product(const PauliWord& a, const PauliWord& b, int& sign) {
  const uint32_t nb = a.n_blocks();
  PauliWord w(a.n_qubits());
  uint64_t cross = 0;  // parity of |x_a & z_b| gives the reordering sign
  for (uint32_t i = 0; i < nb; ++i) {
    cross ^= a.zx_[nb + i] & b.zx_[i];
    w.zx_[i] = a.zx_[i] ^ b.zx_[i];
    w.zx_[nb + i] = a.zx_[nb + i] ^ b.zx_[nb + i];
  }
  sign = (std::popcount(cross) & 1) ? -1 : 1;
  return w;
}

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  check_same_width(a.word.n_qubits(), b.word.n_qubits(), "term product");
  int sign = 1;
  PauliWord w = word_product(a.word, b.word, sign);
  return {std::move(w), a.coeff * b.coeff * static_cast<double>(sign)};
}

Complex adjoint_coeff(const PauliWord& word, Complex coeff) {
  // (Z X)^dagger = X Z = (-1)^{|z & x|} Z X
  const double sign = (word.y_count() & 1) ? -1.0 : 1.0;
  return std::conj(coeff) * sign;
}

Complex pauli_coeff(const PauliWord& word, Complex zx) {
  return zx * i_power(word.y_count());
}

Complex zx_coeff(const PauliWord& word, Complex pauli) {
  return pauli * i_power(4u - (word.y_count() & 3u));
}

// ---------------------------------------------------------------------------
// QubitOperator

Complex QubitOperator::coefficient(const PauliWord& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

void QubitOperator::add_term(const PauliWord& word, Complex coeff) {
  check_same_width(n_, word.n_qubits(), "operator term");
  terms_[word] += coeff;
}

void QubitOperator::add_scaled(const QubitOperator& source, Complex factor) {
  check_same_width(n_, source.n_, "operator sum");
  if (factor == Complex{0.0, 0.0}) return;
  for (const auto& [word, coeff] : source.terms_) terms_[word] += factor * coeff;
}

QubitOperator& QubitOperator::operator*=(Complex factor) {
  for (auto& [word, coeff] : terms_) coeff *= factor;
  return *this;
}

void QubitOperator::compact(double drop_tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= drop_tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out(n_);
  out.reserve(size());
  for (const auto& [word, coeff] : terms_)
    out.terms_.emplace(word, adjoint_coeff(word, coeff));
  return out;
}

double QubitOperator::hermiticity_deviation() const {
  double dev = 0.0;
  for (const auto& [word, coeff] : terms_)
    dev = std::max(dev, std::abs(coeff - adjoint_coeff(word, coeff)));
  return dev;
}

std::vector<PauliTerm> QubitOperator::sorted_terms() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& [word, coeff] : terms_) out.push_back({word, coeff});
  std::sort(out.begin(), out.end(), [](const PauliTerm& a, const PauliTerm& b) {
    return PauliWord::lex_less_xz(a.word, b.word);
  });
  return out;
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  check_same_width(a.n_qubits(), b.n_qubits(), "operator product");
  QubitOperator out(a.n_qubits());
  out.reserve(a.size() * b.size());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      int sign = 1;
      PauliWord w = word_product(wa, wb, sign);
      out.add_term(w, ca * cb * static_cast<double>(sign));
    }
  }
  return out;
}

bool is_hermitian(const QubitOperator& op, double tol) {
  return op.hermiticity_deviation() <= tol;
}

// ---------------------------------------------------------------------------
// Ising decomposition

const IsingComponent* IsingDecomposition::find(const QubitMask& flip) const {
  auto it = std::lower_bound(
      comps_.begin(), comps_.end(), flip,
      [](const IsingComponent& c, const QubitMask& k) { return c.flip < k; });
  if (it == comps_.end() || !(it->flip == flip)) return nullptr;
  return &*it;
}

IsingDecomposition ising_decompose(const QubitOperator& op) {
  IsingDecomposition dec(op.n_qubits());
  std::unordered_map<QubitMask, size_t, QubitMaskHash> index;
  for (const auto& [word, coeff] : op.terms()) {
    QubitMask x = word.x_mask();
    auto [it, inserted] = index.emplace(x, dec.comps_.size());
    if (inserted) dec.comps_.push_back({std::move(x), {}});
    dec.comps_[it->second].terms.emplace_back(word.z_mask(), coeff);
  }
  std::sort(dec.comps_.begin(), dec.comps_.end(),
            [](const IsingComponent& a, const IsingComponent& b) {
              return a.flip < b.flip;
            });
  for (auto& comp : dec.comps_) {
    std::sort(comp.terms.begin(), comp.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return dec;
}

QubitOperator reassemble(const IsingDecomposition& dec) {
  QubitOperator op(dec.n_qubits());
  for (const auto& comp : dec.components())
    for (const auto& [z, coeff] : comp.terms)
      op.add_term(PauliWord::from_masks(z, comp.flip), coeff);
  return op;
}

}  // namespace iqcc

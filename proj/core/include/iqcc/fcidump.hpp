/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace iqcc {

/// Molecular integrals in chemist notation: h_pq and (pq|rs) with the full
/// 8-fold index symmetry, plus the scalar core energy. All values in hartree.
class IntegralSet {
 public:
  IntegralSet() = default;
  IntegralSet(uint32_t n_orbitals, uint32_t n_electrons, int ms2,
              double core_energy);

  uint32_t n_orbitals() const { return n_orbitals_; }
  uint32_t n_electrons() const { return n_electrons_; }
  int ms2() const { return ms2_; }
  double core_energy() const { return core_energy_; }
  void set_core_energy(double e) { core_energy_ = e; }

  double one_body(uint32_t p, uint32_t q) const {
    return h_[p * n_orbitals_ + q];
  }
  /// Sets h_pq and h_qp.
  void set_one_body(uint32_t p, uint32_t q, double value);

  double two_body(uint32_t p, uint32_t q, uint32_t r, uint32_t s) const {
    return eri_[((p * n_orbitals_ + q) * n_orbitals_ + r) * n_orbitals_ + s];
  }
  /// Sets all 8 symmetry images of (pq|rs).
  void set_two_body(uint32_t p, uint32_t q, uint32_t r, uint32_t s,
                    double value);

  /// Max symmetry violation across h and the stored eri tensor.
  double symmetry_deviation() const;

 private:
  uint32_t n_orbitals_ = 0;
  uint32_t n_electrons_ = 0;
  int ms2_ = 0;
  double core_energy_ = 0.0;
  std::vector<double> h_;
  std::vector<double> eri_;
};

/// FCIDUMP reader: namelist header (&FCI NORB=...,NELEC=...,MS2=...,&END or
/// '/'), then `value i j k l` records with 1-based indices; the all-zero
/// record is the core energy. Duplicate records must agree within 1e-10.
IntegralSet parse_fcidump(std::istream& in);
IntegralSet parse_fcidump_string(const std::string& text);
IntegralSet load_fcidump(const std::string& path);

/// Fold doubly occupied core orbitals into the one-body integrals and the
/// core energy; the result spans the retained orbitals with the electron
/// count reduced by 2 per frozen orbital.
IntegralSet freeze_core(const IntegralSet& integrals,
                        std::span<const uint32_t> core_orbitals);

}  // namespace iqcc

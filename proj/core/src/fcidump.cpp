/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace iqcc {

IntegralSet::IntegralSet(uint32_t n_orbitals, uint32_t n_electrons, int ms2,
                         double core_energy)
    : n_orbitals_(n_orbitals),
      n_electrons_(n_electrons),
      ms2_(ms2),
      core_energy_(core_energy),
      h_(size_t{n_orbitals} * n_orbitals, 0.0),
      eri_(size_t{n_orbitals} * n_orbitals * n_orbitals * n_orbitals, 0.0) {
  if (n_electrons > 2 * n_orbitals)
    throw std::invalid_argument("electron count exceeds spin-orbital count");
}

void IntegralSet::set_one_body(uint32_t p, uint32_t q, double value) {
  h_[p * n_orbitals_ + q] = value;
  h_[q * n_orbitals_ + p] = value;
}

void IntegralSet::set_two_body(uint32_t p, uint32_t q, uint32_t r, uint32_t s,
                               double value) {
  const uint32_t n = n_orbitals_;
  auto put = [&](uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
    eri_[((size_t{a} * n + b) * n + c) * n + d] = value;
  };
  put(p, q, r, s);
  put(q, p, r, s);
  put(p, q, s, r);
  put(q, p, s, r);
  put(r, s, p, q);
  put(s, r, p, q);
  put(r, s, q, p);
  put(s, r, q, p);
}

double IntegralSet::symmetry_deviation() const {
  double dev = 0.0;
  for (uint32_t p = 0; p < n_orbitals_; ++p)
    for (uint32_t q = 0; q <= p; ++q)
      dev = std::max(dev, std::abs(one_body(p, q) - one_body(q, p)));
  for (uint32_t p = 0; p < n_orbitals_; ++p)
    for (uint32_t q = 0; q < n_orbitals_; ++q)
      for (uint32_t r = 0; r < n_orbitals_; ++r)
        for (uint32_t s = 0; s < n_orbitals_; ++s) {
          const double v = two_body(p, q, r, s);
          dev = std::max({dev, std::abs(v - two_body(q, p, r, s)),
                          std::abs(v - two_body(p, q, s, r)),
                          std::abs(v - two_body(r, s, p, q))});
        }
  return dev;
}

namespace {

// Canonical key of a two-body record under the 8-fold symmetry.
uint64_t eri_key(uint32_t p, uint32_t q, uint32_t r, uint32_t s) {
  auto pair_index = [](uint32_t a, uint32_t b) -> uint64_t {
    if (a < b) std::swap(a, b);
    return uint64_t{a} * (a + 1) / 2 + b;
  };
  uint64_t ij = pair_index(p, q), kl = pair_index(r, s);
  if (ij < kl) std::swap(ij, kl);
  return ij * (ij + 1) / 2 + kl;
}

struct HeaderFields {
  long norb = -1;
  long nelec = -1;
  long ms2 = 0;
};

// The namelist header may span several lines; values we do not use
// (ORBSYM, ISYM, ...) are skipped.
HeaderFields parse_header(std::istream& in, size_t& line_no) {
  std::string header;
  std::string line;
  bool started = false, done = false;
  while (!done && std::getline(in, line)) {
    ++line_no;
    if (!started) {
      const auto amp = line.find('&');
      if (amp == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
          throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                      ": expected &FCI header");
        continue;
      }
      started = true;
    }
    std::string upper = line;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    const auto endpos = upper.find("&END");
    const auto slash = line.find('/');
    if (endpos != std::string::npos) {
      header += line.substr(0, endpos);
      done = true;
    } else if (slash != std::string::npos) {
      header += line.substr(0, slash);
      done = true;
    } else {
      header += line;
    }
    header += ' ';
  }
  if (!started || !done)
    throw std::invalid_argument("FCIDUMP: unterminated or missing &FCI header");

  std::transform(header.begin(), header.end(), header.begin(), ::toupper);
  for (char& c : header)
    if (c == ',' || c == '\t' || c == '\r') c = ' ';

  HeaderFields fields;
  auto read_long = [&](const std::string& key, long& out) {
    const auto pos = header.find(key + "=");
    if (pos == std::string::npos) return false;
    out = std::stol(header.substr(pos + key.size() + 1));
    return true;
  };
  read_long("NORB", fields.norb);
  read_long("NELEC", fields.nelec);
  read_long("MS2", fields.ms2);
  if (fields.norb < 0) throw std::invalid_argument("FCIDUMP: missing NORB");
  if (fields.nelec < 0) throw std::invalid_argument("FCIDUMP: missing NELEC");
  return fields;
}

}  // namespace

IntegralSet parse_fcidump(std::istream& in) {
  size_t line_no = 0;
  const HeaderFields fields = parse_header(in, line_no);
  IntegralSet integrals(static_cast<uint32_t>(fields.norb),
                        static_cast<uint32_t>(fields.nelec),
                        static_cast<int>(fields.ms2), 0.0);
  const long n = fields.norb;

  constexpr double kDupTol = 1e-10;
  std::unordered_map<uint64_t, double> seen_eri;
  std::unordered_map<uint64_t, double> seen_h;
  bool seen_core = false;
  double core_value = 0.0;

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    double value;
    long i, j, k, l;
    if (!(ls >> value)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                  ": malformed record");
    }
    if (!(ls >> i >> j >> k >> l))
      throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                  ": expected 4 indices");
    if (i < 0 || j < 0 || k < 0 || l < 0 || i > n || j > n || k > n || l > n)
      throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                  ": index out of range");
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (seen_core && std::abs(core_value - value) > kDupTol)
        throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                    ": inconsistent duplicate core record");
      seen_core = true;
      core_value = value;
      integrals.set_core_energy(value);
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0)
        throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                    ": bad one-body indices");
      const uint32_t p = static_cast<uint32_t>(i - 1),
                     q = static_cast<uint32_t>(j - 1);
      const uint64_t key = std::min(p, q) * uint64_t{1000000} + std::max(p, q);
      auto [it, inserted] = seen_h.emplace(key, value);
      if (!inserted && std::abs(it->second - value) > kDupTol)
        throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                    ": inconsistent duplicate h record");
      integrals.set_one_body(p, q, value);
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0)
        throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                    ": bad two-body indices");
      const uint32_t p = static_cast<uint32_t>(i - 1),
                     q = static_cast<uint32_t>(j - 1),
                     r = static_cast<uint32_t>(k - 1),
                     s = static_cast<uint32_t>(l - 1);
      const uint64_t key = eri_key(p, q, r, s);
      auto [it, inserted] = seen_eri.emplace(key, value);
      if (!inserted && std::abs(it->second - value) > kDupTol)
        throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                    ": inconsistent duplicate eri record");
      integrals.set_two_body(p, q, r, s, value);
    }
  }
  return integrals;
}

IntegralSet parse_fcidump_string(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

IntegralSet load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open FCIDUMP '" + path + "'");
  return parse_fcidump(in);
}

IntegralSet freeze_core(const IntegralSet& integrals,
                        std::span<const uint32_t> core_orbitals) {
  const uint32_t n = integrals.n_orbitals();
  std::set<uint32_t> core(core_orbitals.begin(), core_orbitals.end());
  if (core.size() != core_orbitals.size())
    throw std::invalid_argument("freeze_core: duplicate core orbital");
  for (uint32_t f : core) {
    if (f >= n)
      throw std::invalid_argument("freeze_core: orbital " + std::to_string(f) +
                                  " out of range");
    // both spin orbitals of f must be occupied in the aufbau determinant
    if (2 * f + 2 > integrals.n_electrons())
      throw std::invalid_argument("freeze_core: orbital " + std::to_string(f) +
                                  " is not doubly occupied in the reference");
  }

  std::vector<uint32_t> retained;
  for (uint32_t p = 0; p < n; ++p)
    if (!core.contains(p)) retained.push_back(p);

  const uint32_t nr = static_cast<uint32_t>(retained.size());
  IntegralSet out(nr,
                  integrals.n_electrons() - 2 * static_cast<uint32_t>(core.size()),
                  integrals.ms2(), 0.0);

  double e_core = integrals.core_energy();
  for (uint32_t i : core) {
    e_core += 2.0 * integrals.one_body(i, i);
    for (uint32_t j : core)
      e_core += 2.0 * integrals.two_body(i, i, j, j) -
                integrals.two_body(i, j, j, i);
  }
  out.set_core_energy(e_core);

  for (uint32_t a = 0; a < nr; ++a) {
    for (uint32_t b = a; b < nr; ++b) {
      const uint32_t p = retained[a], q = retained[b];
      double h = integrals.one_body(p, q);
      for (uint32_t i : core)
        h += 2.0 * integrals.two_body(p, q, i, i) -
             integrals.two_body(p, i, i, q);
      out.set_one_body(a, b, h);
    }
  }
  for (uint32_t a = 0; a < nr; ++a)
    for (uint32_t b = 0; b <= a; ++b)
      for (uint32_t c = 0; c < nr; ++c)
        for (uint32_t d = 0; d <= c; ++d)
          out.set_two_body(a, b, c, d,
                           integrals.two_body(retained[a], retained[b],
                                              retained[c], retained[d]));
  return out;
}

}  // namespace iqcc

/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "iqcc/fcidump.hpp"
#include "iqcc/jordan_wigner.hpp"
#include "iqcc/oracle.hpp"
#include "support/test_helpers.hpp"

using namespace iqcc;

namespace {

// Fock-space matrix built directly on occupation bitstrings with explicit
// fermionic sign bookkeeping; shares nothing with the Pauli-algebra path.
class FockOracle {
 public:
  FockOracle(const IntegralSet& integrals, SpinOrbitalOrdering ordering)
      : integrals_(integrals), ordering_(ordering) {}

  Eigen::MatrixXd matrix() const {
    const uint32_t n_so = 2 * integrals_.n_orbitals();
    const uint64_t dim = uint64_t{1} << n_so;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (uint64_t ket = 0; ket < dim; ++ket) {
      add_one_body(m, ket);
      add_two_body(m, ket);
      m(ket, ket) += integrals_.core_energy();
    }
    return m;
  }

 private:
  uint32_t mode(uint32_t p, uint32_t s) const {
    return spin_orbital_qubit(p, s, integrals_.n_orbitals(), ordering_);
  }

  static int annihilate(uint64_t& occ, uint32_t q) {
    if (!((occ >> q) & 1)) return 0;
    const int sign =
        (std::popcount(occ & ((uint64_t{1} << q) - 1)) & 1) ? -1 : 1;
    occ &= ~(uint64_t{1} << q);
    return sign;
  }

  static int create(uint64_t& occ, uint32_t q) {
    if ((occ >> q) & 1) return 0;
    const int sign =
        (std::popcount(occ & ((uint64_t{1} << q) - 1)) & 1) ? -1 : 1;
    occ |= uint64_t{1} << q;
    return sign;
  }

  void add_one_body(Eigen::MatrixXd& m, uint64_t ket) const {
    const uint32_t n = integrals_.n_orbitals();
    for (uint32_t p = 0; p < n; ++p)
      for (uint32_t q = 0; q < n; ++q) {
        const double h = integrals_.one_body(p, q);
        if (h == 0.0) continue;
        for (uint32_t s = 0; s < 2; ++s) {
          uint64_t occ = ket;
          int sign = annihilate(occ, mode(q, s));
          if (!sign) continue;
          const int s2 = create(occ, mode(p, s));
          if (!s2) continue;
          m(occ, ket) += h * sign * s2;
        }
      }
  }

  void add_two_body(Eigen::MatrixXd& m, uint64_t ket) const {
    const uint32_t n = integrals_.n_orbitals();
    for (uint32_t p = 0; p < n; ++p)
      for (uint32_t q = 0; q < n; ++q)
        for (uint32_t r = 0; r < n; ++r)
          for (uint32_t s = 0; s < n; ++s) {
            const double v = integrals_.two_body(p, q, r, s);
            if (v == 0.0) continue;
            for (uint32_t s1 = 0; s1 < 2; ++s1)
              for (uint32_t s2 = 0; s2 < 2; ++s2) {
                // a+_{p s1} a+_{r s2} a_{s s2} a_{q s1}, rightmost first
                uint64_t occ = ket;
                int sign = annihilate(occ, mode(q, s1));
                if (!sign) continue;
                int t = annihilate(occ, mode(s, s2));
                if (!t) continue;
                sign *= t;
                t = create(occ, mode(r, s2));
                if (!t) continue;
                sign *= t;
                t = create(occ, mode(p, s1));
                if (!t) continue;
                sign *= t;
                m(occ, ket) += 0.5 * v * sign;
              }
          }
  }

  const IntegralSet& integrals_;
  SpinOrbitalOrdering ordering_;
};

IntegralSet random_integrals(std::mt19937_64& rng, uint32_t n_orb,
                             uint32_t n_elec) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  IntegralSet integrals(n_orb, n_elec, 0, val(rng));
  for (uint32_t p = 0; p < n_orb; ++p)
    for (uint32_t q = 0; q <= p; ++q)
      integrals.set_one_body(p, q, val(rng));
  for (uint32_t p = 0; p < n_orb; ++p)
    for (uint32_t q = 0; q <= p; ++q)
      for (uint32_t r = 0; r < n_orb; ++r)
        for (uint32_t s = 0; s <= r; ++s)
          integrals.set_two_body(p, q, r, s, 0.4 * val(rng));
  return integrals;
}

std::vector<double> sorted_eigs_c(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m,
                                                         Eigen::EigenvaluesOnly);
  std::vector<double> v(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + m.rows());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> sorted_eigs_r(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m,
                                                        Eigen::EigenvaluesOnly);
  std::vector<double> v(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + m.rows());
  std::sort(v.begin(), v.end());
  return v;
}

const std::string kFixture =
    std::string(IQCC_TEST_DATA_DIR) + "/h2_sto6g.fcidump";

}  // namespace

TEST_CASE("parse_fcidump: minimal one-orbital file") {
  const IntegralSet integrals = parse_fcidump_string(
      " &FCI NORB=1,NELEC=2,MS2=0,\n &END\n"
      " -1.0 1 1 0 0\n"
      " 0.5 0 0 0 0\n");
  CHECK(integrals.n_orbitals() == 1);
  CHECK(integrals.n_electrons() == 2);
  CHECK(integrals.one_body(0, 0) == -1.0);
  CHECK(integrals.core_energy() == 0.5);
}

TEST_CASE("parse_fcidump: core record and slash-terminated header") {
  const IntegralSet integrals = parse_fcidump_string(
      "&FCI NORB=2,NELEC=2,MS2=0,ORBSYM=1,1,ISYM=1\n/\n"
      "0.75 0 0 0 0\n");
  CHECK(integrals.core_energy() == 0.75);
  CHECK(integrals.n_orbitals() == 2);
}

TEST_CASE("parse_fcidump: error paths") {
  CHECK_THROWS_WITH_AS(parse_fcidump_string("&FCI NELEC=2 &END\n"),
                       doctest::Contains("NORB"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_fcidump_string("&FCI NORB=2 &END\n"),
                       doctest::Contains("NELEC"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_fcidump_string("&FCI NORB=2,NELEC=2 &END\n1.0 3 1 0 0\n"),
      doctest::Contains("out of range"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_fcidump_string(
          "&FCI NORB=2,NELEC=2 &END\n1.0 1 1 0 0\n1.5 1 1 0 0\n"),
      doctest::Contains("duplicate"), std::invalid_argument);
  // consistent duplicates are fine
  CHECK_NOTHROW(parse_fcidump_string(
      "&FCI NORB=2,NELEC=2 &END\n1.0 1 1 0 0\n1.0 1 1 0 0\n"));
}

TEST_CASE("parse_fcidump: 8-fold symmetry is applied") {
  const IntegralSet integrals = parse_fcidump_string(
      "&FCI NORB=2,NELEC=2,MS2=0 &END\n"
      "0.3 2 1 2 2\n");
  CHECK(integrals.two_body(1, 0, 1, 1) == 0.3);
  CHECK(integrals.two_body(0, 1, 1, 1) == 0.3);
  CHECK(integrals.two_body(1, 1, 1, 0) == 0.3);
  CHECK(integrals.two_body(1, 1, 0, 1) == 0.3);
  CHECK(integrals.symmetry_deviation() == 0.0);
}

TEST_CASE("jordan_wigner: one orbital with h11 = eps") {
  // one spatial orbital, two modes: eps * (n_alpha + n_beta) + core
  const double eps = -0.9, core = 0.25;
  IntegralSet integrals(1, 0, 0, core);
  integrals.set_one_body(0, 0, eps);
  const QubitOperator h = jordan_wigner(integrals);
  CHECK(h.n_qubits() == 2);
  // eps/2 (I - Z0) + eps/2 (I - Z1) + core I
  CHECK(h.coefficient(PauliWord(2)) == Complex{eps + core, 0.0});
  CHECK(h.coefficient(PauliWord::from_bits(2, 0b01, 0)) ==
        Complex{-eps / 2, 0.0});
  CHECK(h.coefficient(PauliWord::from_bits(2, 0b10, 0)) ==
        Complex{-eps / 2, 0.0});
  CHECK(h.size() == 3);
}

TEST_CASE("jordan_wigner: H2 fixture structure") {
  const IntegralSet integrals = load_fcidump(kFixture);
  const QubitOperator h = jordan_wigner(integrals);
  CHECK(h.n_qubits() == 4);
  CHECK(is_hermitian(h, 1e-12));
  CHECK(ising_decompose(h).components().size() == 2);
}

TEST_CASE("jordan_wigner spectrum matches the Fock-space oracle") {
  std::mt19937_64 rng(3);
  for (uint32_t n_orb = 1; n_orb <= 3; ++n_orb) {
    for (int trial = 0; trial < 3; ++trial) {
      const IntegralSet integrals = random_integrals(rng, n_orb, n_orb);
      for (auto ordering : {SpinOrbitalOrdering::interleaved,
                            SpinOrbitalOrdering::blocked}) {
        const QubitOperator h = jordan_wigner(integrals, ordering);
        const auto qubit_eigs = sorted_eigs_c(dense_matrix(h));
        const auto fock_eigs =
            sorted_eigs_r(FockOracle(integrals, ordering).matrix());
        REQUIRE(qubit_eigs.size() == fock_eigs.size());
        for (size_t i = 0; i < qubit_eigs.size(); ++i)
          CHECK(qubit_eigs[i] == doctest::Approx(fock_eigs[i]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("HF expectation equals the determinant energy from integrals") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const uint32_t n_orb = 2 + static_cast<uint32_t>(rng() % 2);
    const uint32_t n_elec = 1 + static_cast<uint32_t>(rng() % (2 * n_orb));
    const IntegralSet integrals = random_integrals(rng, n_orb, n_elec);
    for (auto ordering : {SpinOrbitalOrdering::interleaved,
                          SpinOrbitalOrdering::blocked}) {
      const QubitOperator h = jordan_wigner(integrals, ordering);
      const MeanFieldState ref = hf_reference(integrals, ordering);
      CHECK(expectation(h, ref) ==
            doctest::Approx(hf_energy(integrals)).epsilon(1e-10));
    }
  }
}

TEST_CASE("JW operator commutes with N and Sz") {
  std::mt19937_64 rng(7);
  const IntegralSet integrals = random_integrals(rng, 3, 3);
  const QubitOperator h = jordan_wigner(integrals);
  const QubitOperator n_op = number_operator(3, SpinOrbitalOrdering::interleaved);
  const QubitOperator sz = sz_operator(3, SpinOrbitalOrdering::interleaved);

  QubitOperator comm_n = h * n_op;
  comm_n.add_scaled(n_op * h, {-1.0, 0.0});
  comm_n.compact(0.0);
  CHECK(test::max_abs_entry(dense_matrix(comm_n)) < 1e-10);

  QubitOperator comm_sz = h * sz;
  comm_sz.add_scaled(sz * h, {-1.0, 0.0});
  comm_sz.compact(0.0);
  CHECK(test::max_abs_entry(dense_matrix(comm_sz)) < 1e-10);
}

TEST_CASE("hf_reference") {
  SUBCASE("H2: two electrons, interleaved") {
    const IntegralSet integrals = load_fcidump(kFixture);
    CHECK(hf_reference(integrals).str() == "--++");
  }
  SUBCASE("zero electrons: all +1") {
    IntegralSet integrals(2, 0, 0, 0.0);
    CHECK(hf_reference(integrals).str() == "++++");
  }
  SUBCASE("full shell: all -1") {
    IntegralSet integrals(2, 4, 0, 0.0);
    CHECK(hf_reference(integrals).str() == "----");
  }
  SUBCASE("blocked ordering places beta in the upper half") {
    IntegralSet integrals(3, 3, 0, 0.0);  // 0a, 0b, 1a occupied
    CHECK(hf_reference(integrals, SpinOrbitalOrdering::blocked).str() ==
          "--+-++");
  }
  SUBCASE("odd electron count under interleaving") {
    IntegralSet integrals(2, 3, 0, 0.0);  // 0a, 0b, 1a
    CHECK(hf_reference(integrals).str() == "---+");
  }
}

TEST_CASE("freeze_core") {
  std::mt19937_64 rng(11);
  SUBCASE("empty core set is the identity") {
    const IntegralSet integrals = random_integrals(rng, 2, 2);
    const IntegralSet frozen = freeze_core(integrals, {});
    CHECK(frozen.n_orbitals() == 2);
    CHECK(frozen.n_electrons() == 2);
    CHECK(frozen.core_energy() == integrals.core_energy());
    CHECK(frozen.one_body(1, 0) == integrals.one_body(1, 0));
    CHECK(frozen.two_body(1, 0, 1, 1) == integrals.two_body(1, 0, 1, 1));
  }
  SUBCASE("freezing every orbital leaves the determinant energy") {
    for (int trial = 0; trial < 5; ++trial) {
      const IntegralSet integrals = random_integrals(rng, 2, 4);
      const std::vector<uint32_t> all{0, 1};
      const IntegralSet frozen = freeze_core(integrals, all);
      CHECK(frozen.n_orbitals() == 0);
      CHECK(frozen.n_electrons() == 0);
      CHECK(frozen.core_energy() ==
            doctest::Approx(hf_energy(integrals)).epsilon(1e-12));
      // cross-check against the qubit expectation on the full problem
      const QubitOperator h = jordan_wigner(integrals);
      CHECK(frozen.core_energy() ==
            doctest::Approx(expectation(h, hf_reference(integrals)))
                .epsilon(1e-10));
    }
  }
  SUBCASE("frozen problem reproduces the doubly-occupied-restricted oracle") {
    for (int trial = 0; trial < 5; ++trial) {
      const IntegralSet integrals = random_integrals(rng, 2, 4);
      const std::vector<uint32_t> core{0};
      const IntegralSet frozen = freeze_core(integrals, core);
      CHECK(frozen.n_orbitals() == 1);
      CHECK(frozen.n_electrons() == 2);

      const QubitOperator h_frozen = jordan_wigner(frozen);
      const Eigen::MatrixXcd m_frozen = dense_matrix(h_frozen);

      // full problem restricted to determinants with orbital 0 doubly
      // occupied (qubits 0 and 1 under interleaving)
      const QubitOperator h_full = jordan_wigner(integrals);
      const Eigen::MatrixXcd m_full = dense_matrix(h_full);
      std::vector<uint64_t> kept;
      for (uint64_t b = 0; b < 16; ++b)
        if ((b & 0b11) == 0b11) kept.push_back(b);
      Eigen::MatrixXcd restricted(kept.size(), kept.size());
      for (size_t i = 0; i < kept.size(); ++i)
        for (size_t j = 0; j < kept.size(); ++j)
          restricted(i, j) = m_full(kept[i], kept[j]);

      const auto a = sorted_eigs_c(m_frozen);
      const auto b = sorted_eigs_c(restricted);
      REQUIRE(a.size() == b.size());
      for (size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));
    }
  }
  SUBCASE("validation") {
    const IntegralSet integrals = random_integrals(rng, 2, 2);
    const std::vector<uint32_t> bad_range{5};
    CHECK_THROWS_AS(freeze_core(integrals, bad_range), std::invalid_argument);
    const std::vector<uint32_t> not_doubly{1};  // only orbital 0 is occupied
    CHECK_THROWS_AS(freeze_core(integrals, not_doubly), std::invalid_argument);
    const std::vector<uint32_t> dup{0, 0};
    CHECK_THROWS_AS(freeze_core(integrals, dup), std::invalid_argument);
  }
}

TEST_CASE("H2 fixture energies: HF and FCI") {
  const IntegralSet integrals = load_fcidump(kFixture);
  CHECK(hf_energy(integrals) == doctest::Approx(-1.1247307495).epsilon(5e-8));
  const QubitOperator h = jordan_wigner(integrals);
  CHECK(ground_energy(h).energy ==
        doctest::Approx(-1.1457416726).epsilon(5e-8));
}

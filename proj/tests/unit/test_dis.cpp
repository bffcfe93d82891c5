/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iqcc/dis.hpp"
#include "iqcc/fcidump.hpp"
#include "iqcc/jordan_wigner.hpp"
#include "iqcc/oracle.hpp"
#include "iqcc/qcc.hpp"
#include "support/test_helpers.hpp"

using namespace iqcc;

namespace {

// dE/dtau at 0 from the dense commutator, -(i/2) <0| [H, P] |0>.
double dense_slope(const QubitOperator& op, const MeanFieldState& s,
                   const PauliWord& gen) {
  QubitOperator p(op.n_qubits());
  p.add_term(gen, zx_coeff(gen, {1.0, 0.0}));
  const StateVector v = StateVector::basis(s);
  const Complex hp = inner(v, apply(op, apply(p, v)));
  const Complex ph = inner(v, apply(p, apply(op, v)));
  return (Complex{0.0, -0.5} * (hp - ph)).real();
}

}  // namespace

TEST_CASE("select_generator: single y on the lowest set bit") {
  const MeanFieldState s(6);
  SUBCASE("k = {0,1,2,3}") {
    const PauliWord g =
        select_generator(QubitMask::from_bits(6, 0b1111), s);
    CHECK(g.str() == "Y0 X1 X2 X3");
    CHECK(g.y_count() == 1);
  }
  SUBCASE("k = {5}") {
    const PauliWord g = select_generator(QubitMask::from_bits(6, 1u << 5), s);
    CHECK(g.str() == "Y5");
  }
  SUBCASE("k = 0 is rejected") {
    CHECK_THROWS_AS(select_generator(QubitMask(6), s), std::invalid_argument);
  }
  SUBCASE("X_k times P is a pure-Z word for random k") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const QubitMask k = test::random_mask(rng, 6, /*allow_empty=*/false);
      const PauliWord g = select_generator(k, s);
      CHECK(g.x_mask() == k);
      const PauliTerm xk{PauliWord::from_masks(QubitMask(6), k), {1.0, 0.0}};
      const PauliTerm prod =
          multiply(xk, {g, zx_coeff(g, {1.0, 0.0})});
      CHECK_FALSE(prod.word.has_x());
      CHECK((g.z_mask() & k).count() % 2 == 1);  // odd bit overlap
    }
  }
}

TEST_CASE("build_dis: H2 fixture has one group with generator Y0 X1 X2 X3") {
  const IntegralSet integrals =
      load_fcidump(std::string(IQCC_TEST_DATA_DIR) + "/h2_sto6g.fcidump");
  const QubitOperator h = jordan_wigner(integrals);
  const MeanFieldState ref = hf_reference(integrals);
  CHECK(ref.str() == "--++");

  const IsingDecomposition dec = ising_decompose(h);
  CHECK(dec.components().size() == 2);

  const auto groups = build_dis(dec, ref);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].flip == QubitMask::from_bits(4, 0b1111));
  CHECK(groups[0].generator.str() == "Y0 X1 X2 X3");
  CHECK(groups[0].omega == doctest::Approx(std::abs(groups[0].coupling)));
  CHECK(groups[0].denom > 0.0);
}

TEST_CASE("build_dis: pure Ising operator gives an empty DIS") {
  std::mt19937_64 rng(5);
  QubitOperator op(5);
  for (int t = 0; t < 8; ++t)
    op.add_term(PauliWord::from_masks(test::random_mask(rng, 5), QubitMask(5)),
                {0.4, 0.0});
  CHECK(build_dis(op, MeanFieldState(5)).empty());
}

TEST_CASE("build_dis: finite-difference slope matches +-omega") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const QubitOperator op = test::random_test_hamiltonian(rng, 6);
    const MeanFieldState s = test::random_state(rng, 6);
    const double e_at = qcc_energy(op, {}, s);
    (void)e_at;
    for (const DISGroup& g : build_dis(op, s)) {
      const double h = 1e-5;
      auto energy_at = [&](double tau) {
        QCCAnsatz ansatz;
        ansatz.entanglers.push_back({g.generator, tau});
        return qcc_energy(op, ansatz, s);
      };
      const double fd = (energy_at(h) - energy_at(-h)) / (2 * h);
      CHECK(std::abs(std::abs(fd) - g.omega) < 1e-6);
    }
  }
}

TEST_CASE("build_dis invariants on random even-y operators") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const uint32_t n = 4 + static_cast<uint32_t>(rng() % 3);
    const QubitOperator op = test::random_even_y_hermitian(rng, n, 30);
    const MeanFieldState s = test::random_state(rng, n);
    const IsingDecomposition dec = ising_decompose(op);
    const auto groups = build_dis(dec, s);
    for (const DISGroup& g : groups) {
      // omega from the Ising expectation, independently restated
      const IsingComponent* comp = dec.find(g.flip);
      REQUIRE(comp != nullptr);
      CHECK(std::abs(ising_expectation(*comp, s)) ==
            doctest::Approx(g.omega).epsilon(1e-12));
      // generator structure
      CHECK(g.generator.x_mask() == g.flip);
      CHECK(g.generator.y_count() % 2 == 1);
      // exact-commutator gradient identity
      CHECK(std::abs(dense_slope(op, s, g.generator)) ==
            doctest::Approx(g.omega).epsilon(1e-11));
      CHECK(std::abs(generator_slope(dec, s, g.generator)) ==
            doctest::Approx(g.omega).epsilon(1e-12));
    }
  }
}

TEST_CASE("DIS completeness: off-DIS odd-y words have zero gradient") {
  std::mt19937_64 rng(13);
  const QubitOperator op = test::random_test_hamiltonian(rng, 6);
  const MeanFieldState s = test::random_state(rng, 6);
  const IsingDecomposition dec = ising_decompose(op);
  const auto groups = build_dis(dec, s);

  std::set<uint64_t> flips;
  for (const DISGroup& g : groups) flips.insert(g.flip.low64());

  int checked = 0;
  while (checked < 100) {
    const QubitMask x = test::random_mask(rng, 6, /*allow_empty=*/false);
    if (flips.contains(x.low64())) continue;
    QubitMask z = test::random_mask(rng, 6);
    if ((z & x).count() % 2 == 0) {
      z.set(x.lowest_set_bit(), !z.test(x.lowest_set_bit()));
    }
    const PauliWord candidate = PauliWord::from_masks(z, x);
    REQUIRE(candidate.y_count() % 2 == 1);
    CHECK(std::abs(dense_slope(op, s, candidate)) < 1e-12);
    ++checked;
  }
}

TEST_CASE("rank: scheme arithmetic and tie-breaking") {
  auto group = [](uint64_t flip, double omega, double denom) {
    DISGroup g;
    g.flip = QubitMask::from_bits(8, flip);
    g.omega = omega;
    g.coupling = {omega, 0.0};
    g.denom = denom;
    g.generator = select_generator(g.flip, MeanFieldState(8));
    return g;
  };
  std::vector<DISGroup> groups{group(0b01, 0.2, 4.0), group(0b10, 0.15, 0.1)};

  SUBCASE("gradient puts the larger omega first") {
    rank_groups(groups, RankingScheme::gradient);
    CHECK(groups[0].omega == 0.2);
  }
  SUBCASE("en1 puts the small denominator first (3.0 > 0.1)") {
    rank_groups(groups, RankingScheme::en1);
    CHECK(groups[0].omega == 0.15);
  }
  SUBCASE("en2 weights") {
    rank_groups(groups, RankingScheme::en2);
    // 0.15^2/0.1 = 0.225 > 0.2^2/4 = 0.01
    CHECK(groups[0].omega == 0.15);
  }
  SUBCASE("single group is itself under every scheme") {
    std::vector<DISGroup> one{group(0b100, 0.3, 1.0)};
    for (auto scheme : {RankingScheme::gradient, RankingScheme::en1,
                        RankingScheme::en2}) {
      auto copy = one;
      rank_groups(copy, scheme);
      CHECK(copy.size() == 1);
      CHECK(copy[0].flip == one[0].flip);
    }
  }
  SUBCASE("near-degenerate denominators rank first under en1/en2") {
    std::vector<DISGroup> d{group(0b01, 1.0, 5.0), group(0b10, 1e-6, 1e-12)};
    rank_groups(d, RankingScheme::en1);
    CHECK(d[0].flip == QubitMask::from_bits(8, 0b10));
  }
  SUBCASE("ties break by ascending flip index") {
    std::vector<DISGroup> t{group(0b10, 0.5, 1.0), group(0b01, 0.5, 1.0)};
    rank_groups(t, RankingScheme::gradient);
    CHECK(t[0].flip == QubitMask::from_bits(8, 0b01));
  }
}

TEST_CASE("ranking changes ordering only, never membership") {
  std::mt19937_64 rng(17);
  const QubitOperator op = test::random_test_hamiltonian(rng, 6);
  const MeanFieldState s = test::random_state(rng, 6);
  auto base = build_dis(op, s);
  std::set<uint64_t> members;
  for (const DISGroup& g : base) members.insert(g.flip.low64());
  for (auto scheme :
       {RankingScheme::gradient, RankingScheme::en1, RankingScheme::en2}) {
    auto copy = base;
    rank_groups(copy, scheme);
    REQUIRE(copy.size() == base.size());
    std::set<uint64_t> after;
    for (const DISGroup& g : copy) after.insert(g.flip.low64());
    CHECK(after == members);
  }
}

TEST_CASE("filter_active") {
  auto group = [](std::initializer_list<uint32_t> bits) {
    DISGroup g;
    g.flip = QubitMask::from_indices(10, std::vector<uint32_t>(bits));
    g.omega = 1.0;
    g.generator = select_generator(g.flip, MeanFieldState(10));
    return g;
  };
  SUBCASE("active = all qubits is the identity filter") {
    ActiveSpace space;
    for (uint32_t q = 0; q < 10; ++q) space.active_qubits.push_back(q);
    space.max_inactive_indices = 0;
    auto groups = filter_active({group({0, 5}), group({9})}, space);
    CHECK(groups.size() == 2);
  }
  SUBCASE("empty active set with max_inactive = 0 removes everything") {
    ActiveSpace space;
    space.max_inactive_indices = 0;
    CHECK(filter_active({group({0}), group({1, 2})}, space).empty());
  }
  SUBCASE("semi-internal counting") {
    ActiveSpace space;
    space.active_qubits = {0, 1, 2, 3};
    DISGroup g = group({0, 1, 9});
    space.max_inactive_indices = 1;
    CHECK(filter_active({g}, space).size() == 1);
    space.max_inactive_indices = 0;
    CHECK(filter_active({g}, space).empty());
  }
}

TEST_CASE("build_dis applies the active-space filter") {
  std::mt19937_64 rng(23);
  const QubitOperator op = test::random_test_hamiltonian(rng, 8);
  const MeanFieldState s = test::random_state(rng, 8);
  DISOptions options;
  ActiveSpace space;
  space.active_qubits = {0, 1, 2, 3};
  space.max_inactive_indices = 0;
  options.active_space = space;
  const QubitMask active = space.mask(8);
  for (const DISGroup& g : build_dis(op, s, options))
    CHECK(g.flip.is_subset_of(active));
}

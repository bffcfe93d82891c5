/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <benchmark/benchmark.h>

#include <random>

#include "iqcc/dis.hpp"
#include "iqcc/mean_field.hpp"
#include "iqcc/pauli.hpp"
#include "iqcc/qcc.hpp"

using namespace iqcc;

namespace {

QubitOperator make_operator(uint32_t n_qubits, size_t n_terms, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> bits(
      0, (uint64_t{1} << n_qubits) - 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  QubitOperator op(n_qubits);
  while (op.size() < n_terms) {
    const uint64_t z = bits(rng), x = bits(rng);
    if (std::popcount(z & x) % 2 != 0) continue;
    op.add_term(PauliWord::from_bits(n_qubits, z, x), {coeff(rng), 0.0});
  }
  return op;
}

MeanFieldState make_state(uint32_t n_qubits, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int8_t> eig(n_qubits);
  for (auto& v : eig) v = (rng() & 1) ? 1 : -1;
  return MeanFieldState(std::move(eig));
}

void bm_term_multiply(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<uint64_t> bits(0, (uint64_t{1} << 56) - 1);
  const PauliTerm a{PauliWord::from_bits(56, bits(rng), bits(rng)), {0.5, 0.1}};
  const PauliTerm b{PauliWord::from_bits(56, bits(rng), bits(rng)), {0.2, -0.4}};
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}
BENCHMARK(bm_term_multiply);

void bm_dress(benchmark::State& state) {
  const uint32_t n = 12;
  const QubitOperator op = make_operator(n, state.range(0), 5);
  const PauliWord gen = select_generator(
      QubitMask::from_bits(n, 0b10110), MeanFieldState(n));
  for (auto _ : state) benchmark::DoNotOptimize(dress(op, gen, 0.37));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_dress)->Arg(1000)->Arg(10000)->Arg(60000);

void bm_ising_decompose(benchmark::State& state) {
  const QubitOperator op = make_operator(12, state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(ising_decompose(op));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_ising_decompose)->Arg(1000)->Arg(10000)->Arg(60000);

void bm_expectation(benchmark::State& state) {
  const uint32_t n = 12;
  const QubitOperator op = make_operator(n, state.range(0), 9);
  const MeanFieldState s = make_state(n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(expectation(op, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_expectation)->Arg(1000)->Arg(10000)->Arg(60000);

void bm_build_dis(benchmark::State& state) {
  const uint32_t n = 12;
  const QubitOperator op = make_operator(n, state.range(0), 13);
  const MeanFieldState s = make_state(n, 15);
  const IsingDecomposition dec = ising_decompose(op);
  for (auto _ : state) benchmark::DoNotOptimize(build_dis(dec, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_build_dis)->Arg(1000)->Arg(10000)->Arg(60000);

void bm_optimize_amplitudes(benchmark::State& state) {
  const uint32_t n = 10;
  const QubitOperator op = make_operator(n, 4000, 17);
  const MeanFieldState s = make_state(n, 19);
  auto groups = build_dis(op, s);
  rank_groups(groups, RankingScheme::gradient);
  std::vector<PauliWord> gens;
  for (size_t i = 0; i < std::min<size_t>(4, groups.size()); ++i)
    gens.push_back(groups[i].generator);
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize_amplitudes(op, gens, s));
}
BENCHMARK(bm_optimize_amplitudes)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

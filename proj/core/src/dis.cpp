/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/dis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace iqcc {

PauliWord select_generator(const QubitMask& k, const MeanFieldState& state,
                           GeneratorPolicy policy) {
  (void)state;  // reserved for reference-dependent policies
  if (k.none())
    throw std::invalid_argument("select_generator requires a nonzero flip");
  switch (policy) {
    case GeneratorPolicy::single_y_lowest_bit: {
      QubitMask z(k.n_qubits());
      z.set(k.lowest_set_bit());
      return PauliWord::from_masks(z, k);
    }
  }
  throw std::logic_error("unknown generator policy");
}

double generator_slope(const IsingDecomposition& dec,
                       const MeanFieldState& state,
                       const PauliWord& generator) {
  const uint32_t m = generator.y_count();
  if (!(m & 1))
    throw std::invalid_argument("generator must carry an odd y count");
  const IsingComponent* comp = dec.find(generator.x_mask());
  if (!comp) return 0.0;
  const Complex a = ising_expectation(*comp, state);
  // slope = z_product(k') * Im(i^m * A_k); for odd m this is +-Re(A_k).
  const double sign = ((m & 3) == 1) ? 1.0 : -1.0;
  return z_product(generator.z_mask(), state) * sign * a.real();
}

std::vector<DISGroup> build_dis(const IsingDecomposition& dec,
                                const MeanFieldState& state,
                                const DISOptions& options) {
  std::vector<DISGroup> groups;
  const QubitMask zero(dec.n_qubits());
  const IsingComponent* ising0 = dec.find(zero);
  const double e0 = ising0 ? ising_expectation(*ising0, state).real() : 0.0;

  std::optional<QubitMask> active;
  if (options.active_space) active = options.active_space->mask(dec.n_qubits());

  for (const IsingComponent& comp : dec.components()) {
    if (comp.flip.none()) continue;
    if (active &&
        comp.flip.count_outside(*active) >
            options.active_space->max_inactive_indices)
      continue;
    const Complex a = ising_expectation(comp, state);
    const double omega = std::abs(a);
    if (omega <= options.gradient_floor) continue;

    DISGroup g;
    g.flip = comp.flip;
    g.omega = omega;
    g.coupling = a;
    g.denom = ising0 ? excited_energy(*ising0, state, comp.flip) - e0 : 0.0;
    g.generator = select_generator(comp.flip, state, options.policy);
    groups.push_back(std::move(g));
  }
  // components() is sorted by flip already; keep that order explicit
  std::sort(groups.begin(), groups.end(),
            [](const DISGroup& a, const DISGroup& b) { return a.flip < b.flip; });
  return groups;
}

std::vector<DISGroup> build_dis(const QubitOperator& op,
                                const MeanFieldState& state,
                                const DISOptions& options) {
  return build_dis(ising_decompose(op), state, options);
}

RankingScheme parse_ranking(const std::string& name) {
  if (name == "gradient") return RankingScheme::gradient;
  if (name == "en1") return RankingScheme::en1;
  if (name == "en2") return RankingScheme::en2;
  throw std::invalid_argument("unknown ranking scheme '" + name +
                              "' (expected gradient|en1|en2)");
}

std::string ranking_name(RankingScheme scheme) {
  switch (scheme) {
    case RankingScheme::gradient: return "gradient";
    case RankingScheme::en1: return "en1";
    case RankingScheme::en2: return "en2";
  }
  return "?";
}

void rank_groups(std::vector<DISGroup>& groups, RankingScheme scheme,
                 double degeneracy_floor) {
  auto weight = [&](const DISGroup& g) -> double {
    switch (scheme) {
      case RankingScheme::gradient:
        return g.omega;
      case RankingScheme::en1:
        if (std::abs(g.denom) < degeneracy_floor)
          return std::numeric_limits<double>::infinity();
        return 2.0 * g.omega / std::abs(g.denom);
      case RankingScheme::en2:
        if (std::abs(g.denom) < degeneracy_floor)
          return std::numeric_limits<double>::infinity();
        return g.omega * g.omega / std::abs(g.denom);
    }
    return 0.0;
  };
  std::sort(groups.begin(), groups.end(),
            [&](const DISGroup& a, const DISGroup& b) {
              const double wa = weight(a), wb = weight(b);
              if (wa != wb) return wa > wb;
              return a.flip < b.flip;
            });
}

std::vector<DISGroup> filter_active(std::vector<DISGroup> groups,
                                    const ActiveSpace& space) {
  if (groups.empty()) return groups;
  const QubitMask active = space.mask(groups.front().flip.n_qubits());
  std::erase_if(groups, [&](const DISGroup& g) {
    return g.flip.count_outside(active) > space.max_inactive_indices;
  });
  return groups;
}

}  // namespace iqcc

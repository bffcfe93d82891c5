/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/qcc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace iqcc {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double tau) {
  if (tau > kPi || tau < -kPi) tau -= 2.0 * kPi * std::round(tau / (2.0 * kPi));
  return tau;
}

PauliTerm generator_term(const PauliWord& generator) {
  // The plain Pauli word behind the stored masks carries i^m relative to
  // Z(z)X(x); fold the inverse phase into the coefficient.
  return {generator, zx_coeff(generator, {1.0, 0.0})};
}

void check_generator(const PauliWord& generator) {
  if (!(generator.y_count() & 1))
    throw std::invalid_argument("QCC generator must carry an odd y count");
}

// -i * (anticommuting part of op) * P: the operator whose mean-field
// expectation is dE/dtau at tau = 0 for the rotation generated by P.
QubitOperator slope_operator(const QubitOperator& op, const PauliWord& generator) {
  const PauliTerm gen = generator_term(generator);
  QubitOperator out(op.n_qubits());
  out.reserve(op.size());
  for (const auto& [word, coeff] : op.terms()) {
    if (word.commutes_with(generator)) continue;
    PauliTerm prod = multiply({word, coeff}, gen);
    out.add_term(prod.word, Complex{0.0, -1.0} * prod.coeff);
  }
  return out;
}

// Shared state for energy/gradient evaluations during optimization.
struct AmplitudeProblem {
  const QubitOperator* op;  // pre-restricted to the energy sector
  const std::vector<PauliWord>* generators;
  const MeanFieldState* state;
  int evals = 0;

  double energy(const std::vector<double>& taus) {
    ++evals;
    QubitOperator h = *op;
    for (size_t j = 0; j < generators->size(); ++j)
      h = dress(h, (*generators)[j], taus[j]);
    return expectation(h, *state);
  }

  std::vector<double> gradient(const std::vector<double>& taus) {
    const size_t g = generators->size();
    std::vector<double> grad(g, 0.0);
    QubitOperator h = *op;
    std::vector<QubitOperator> dressed_through(g);
    for (size_t j = 0; j < g; ++j) {
      h = dress(h, (*generators)[j], taus[j]);
      dressed_through[j] = h;
    }
    for (size_t j = 0; j < g; ++j) {
      ++evals;
      QubitOperator c = slope_operator(dressed_through[j], (*generators)[j]);
      for (size_t l = j + 1; l < g; ++l)
        c = dress(c, (*generators)[l], taus[l]);
      grad[j] = expectation(c, *state, 1e-9);
    }
    return grad;
  }
};

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

QubitOperator dress(const QubitOperator& op, const PauliWord& generator,
                    double tau) {
  check_generator(generator);
  if (op.n_qubits() != generator.n_qubits())
    throw std::invalid_argument("dress: qubit-count mismatch");
  if (tau == 0.0) return op;

  const double c = std::cos(tau);
  const double s = std::sin(tau);
  const PauliTerm gen = generator_term(generator);
  const Complex rot{0.0, -s};

  QubitOperator out(op.n_qubits());
  out.reserve(2 * op.size());
  for (const auto& [word, coeff] : op.terms()) {
    if (word.commutes_with(generator)) {
      out.add_term(word, coeff);
      continue;
    }
    out.add_term(word, c * coeff);
    PauliTerm prod = multiply({word, coeff}, gen);
    out.add_term(prod.word, rot * prod.coeff);
  }
  return out;
}

QubitOperator dress(const QubitOperator& op, const QCCAnsatz& ansatz) {
  QubitOperator h = op;
  for (const Entangler& e : ansatz.entanglers)
    h = dress(h, e.generator, e.amplitude);
  return h;
}

double qcc_energy(const QubitOperator& op, const QCCAnsatz& ansatz,
                  const MeanFieldState& state) {
  if (ansatz.empty()) return expectation(op, state);
  return expectation(dress(op, ansatz), state);
}

TauOptimum optimal_tau_single(double e0, double slope, double denom) {
  const double half_d = 0.5 * denom;
  const double radius = std::hypot(slope, half_d);
  if (radius == 0.0) return {0.0, e0};
  const double delta = std::atan2(-half_d, slope);
  return {wrap_angle(-kPi / 2.0 - delta), e0 + half_d - radius};
}

QubitOperator restrict_to_energy_sector(const QubitOperator& op,
                                        const std::vector<PauliWord>& generators) {
  std::vector<QubitMask> closure{QubitMask(op.n_qubits())};
  std::unordered_set<QubitMask, QubitMaskHash> seen{closure.front()};
  for (const PauliWord& g : generators) {
    const QubitMask m = g.x_mask();
    const size_t n = closure.size();
    for (size_t i = 0; i < n; ++i) {
      QubitMask cand = closure[i] ^ m;
      if (seen.insert(cand).second) closure.push_back(std::move(cand));
    }
  }
  QubitOperator out(op.n_qubits());
  for (const auto& [word, coeff] : op.terms())
    if (seen.contains(word.x_mask())) out.add_term(word, coeff);
  return out;
}

OptimizeResult optimize_amplitudes(const QubitOperator& op,
                                   const std::vector<PauliWord>& generators,
                                   const MeanFieldState& state,
                                   const OptimizeOptions& options) {
  if (generators.empty())
    throw std::invalid_argument("optimize_amplitudes needs >= 1 generator");
  for (const PauliWord& g : generators) check_generator(g);

  // The xor-closure has 2^g masks at worst; beyond that the filter costs
  // more than it saves.
  const QubitOperator restricted = generators.size() <= 12
                                       ? restrict_to_energy_sector(op, generators)
                                       : op;
  AmplitudeProblem problem{&restricted, &generators, &state, 0};
  const size_t g = generators.size();

  std::vector<double> taus(g, 0.0);
  double f = problem.energy(taus);
  const double f_start = f;
  std::vector<double> grad = problem.gradient(taus);

  auto make_result = [&](bool converged) {
    OptimizeResult r;
    r.ansatz.entanglers.reserve(g);
    for (size_t j = 0; j < g; ++j)
      r.ansatz.entanglers.push_back({generators[j], wrap_angle(taus[j])});
    r.energy = f;
    r.grad_norm = inf_norm(grad);
    r.converged = converged;
    r.n_evals = problem.evals;
    if (r.energy > f_start) {  // never report worse than the starting point
      for (auto& e : r.ansatz.entanglers) e.amplitude = 0.0;
      r.energy = f_start;
    }
    return r;
  };

  if (inf_norm(grad) < options.grad_tol) return make_result(true);

  // One generator: the energy is a pure sinusoid; solve it in closed form.
  if (g == 1) {
    const double e_pi = problem.energy({kPi});
    const TauOptimum opt = optimal_tau_single(f, grad[0], e_pi - f);
    taus[0] = opt.tau;
    f = opt.energy;
    grad = problem.gradient(taus);
    return make_result(inf_norm(grad) < options.grad_tol);
  }

  // BFGS on the inverse Hessian with Armijo backtracking.
  std::vector<std::vector<double>> binv(g, std::vector<double>(g, 0.0));
  auto reset_binv = [&] {
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < g; ++j) binv[i][j] = (i == j) ? 1.0 : 0.0;
  };
  reset_binv();

  bool line_search_failed = false;
  while (problem.evals < options.max_evals) {
    std::vector<double> dir(g, 0.0);
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < g; ++j) dir[i] -= binv[i][j] * grad[j];
    double slope0 = dot(dir, grad);
    if (slope0 >= 0.0) {  // not a descent direction; restart from steepest
      reset_binv();
      for (size_t i = 0; i < g; ++i) dir[i] = -grad[i];
      slope0 = dot(dir, grad);
    }

    double alpha = 1.0;
    double f_new = f;
    std::vector<double> taus_new(g);
    bool accepted = false;
    for (int k = 0; k < 40 && problem.evals < options.max_evals; ++k) {
      for (size_t i = 0; i < g; ++i) taus_new[i] = taus[i] + alpha * dir[i];
      f_new = problem.energy(taus_new);
      if (f_new <= f + 1e-4 * alpha * slope0) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      line_search_failed = true;
      break;
    }

    std::vector<double> grad_new = problem.gradient(taus_new);
    std::vector<double> s(g), y(g);
    for (size_t i = 0; i < g; ++i) {
      s[i] = taus_new[i] - taus[i];
      y[i] = grad_new[i] - grad[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12) {
      // Sherman-Morrison BFGS update of the inverse Hessian.
      std::vector<double> by(g, 0.0);
      for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j) by[i] += binv[i][j] * y[j];
      const double yby = dot(y, by);
      const double c1 = (sy + yby) / (sy * sy);
      for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j)
          binv[i][j] += c1 * s[i] * s[j] -
                        (by[i] * s[j] + s[i] * by[j]) / sy;
    } else {
      reset_binv();
    }
    taus = std::move(taus_new);
    f = f_new;
    grad = std::move(grad_new);
    if (inf_norm(grad) < options.grad_tol) return make_result(true);
  }

  // Closed-form coordinate sweeps; also the polish after a failed step.
  (void)line_search_failed;
  while (problem.evals < options.max_evals) {
    for (size_t j = 0; j < g; ++j) {
      const double theta = taus[j];
      const double e_here = f;
      std::vector<double> probe = taus;
      probe[j] = theta + kPi / 2.0;
      const double e_plus = problem.energy(probe);
      probe[j] = theta - kPi / 2.0;
      const double e_minus = problem.energy(probe);
      // E(theta) = a + b cos(theta) + c sin(theta)
      const double a = 0.5 * (e_plus + e_minus);
      const double u = e_here - a;
      const double v = 0.5 * (e_plus - e_minus);
      const double c0 = std::cos(theta), s0 = std::sin(theta);
      const double b = u * c0 - v * s0;
      const double c = u * s0 + v * c0;
      const double r = std::hypot(b, c);
      if (r == 0.0) continue;
      taus[j] = std::atan2(-c, -b);
      f = a - r;
    }
    grad = problem.gradient(taus);
    if (inf_norm(grad) < options.grad_tol) return make_result(true);
  }
  return make_result(false);
}

}  // namespace iqcc

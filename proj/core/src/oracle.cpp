/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace iqcc {

namespace {

struct FlatTerm {
  uint64_t z, x;
  Complex coeff;
};

std::vector<FlatTerm> flatten(const QubitOperator& op) {
  if (op.n_qubits() > 24)
    throw std::invalid_argument("statevector path limited to 24 qubits");
  std::vector<FlatTerm> terms;
  terms.reserve(op.size());
  for (const auto& t : op.sorted_terms())
    terms.push_back({t.word.z_mask().low64(), t.word.x_mask().low64(), t.coeff});
  return terms;
}

void check_dims(const QubitOperator& op, const StateVector& v) {
  if (op.n_qubits() != v.n_qubits || v.amplitudes.size() != (size_t{1} << v.n_qubits))
    throw std::invalid_argument("apply: dimension mismatch");
}

void apply_range(const std::vector<FlatTerm>& terms,
                 const std::vector<Complex>& in, std::vector<Complex>& out,
                 uint64_t begin, uint64_t end) {
  for (uint64_t t = begin; t < end; ++t) {
    Complex acc{0.0, 0.0};
    for (const FlatTerm& term : terms) {
      const Complex a = in[t ^ term.x];
      acc += (std::popcount(term.z & t) & 1) ? -term.coeff * a : term.coeff * a;
    }
    out[t] = acc;
  }
}

}  // namespace

StateVector StateVector::zero(uint32_t n_qubits) {
  if (n_qubits > 24)
    throw std::invalid_argument("statevector path limited to 24 qubits");
  StateVector v;
  v.n_qubits = n_qubits;
  v.amplitudes.assign(size_t{1} << n_qubits, Complex{0.0, 0.0});
  return v;
}

StateVector StateVector::basis(const MeanFieldState& state) {
  StateVector v = zero(state.n_qubits());
  v.amplitudes[state.minus_bits()] = Complex{1.0, 0.0};
  return v;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const Complex& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::runtime_error("cannot normalize a zero vector");
  for (Complex& a : amplitudes) a /= n;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("inner: dimension mismatch");
  Complex s{0.0, 0.0};
  for (size_t i = 0; i < a.amplitudes.size(); ++i)
    s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

StateVector apply(const QubitOperator& op, const StateVector& v, int threads) {
  check_dims(op, v);
  const auto terms = flatten(op);
  StateVector out = StateVector::zero(v.n_qubits);
  const uint64_t dim = out.amplitudes.size();

  const int n_workers =
      std::clamp<int>(threads, 1, static_cast<int>(std::min<uint64_t>(dim, 64)));
  if (n_workers == 1 || dim < 4096) {
    apply_range(terms, v.amplitudes, out.amplitudes, 0, dim);
    return out;
  }
  std::vector<std::thread> pool;
  const uint64_t chunk = (dim + n_workers - 1) / n_workers;
  for (int w = 0; w < n_workers; ++w) {
    const uint64_t begin = w * chunk;
    const uint64_t end = std::min(dim, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(apply_range, std::cref(terms), std::cref(v.amplitudes),
                      std::ref(out.amplitudes), begin, end);
  }
  for (auto& t : pool) t.join();
  return out;
}

double rayleigh(const QubitOperator& op, const StateVector& v) {
  return inner(v, apply(op, v)).real();
}

StateVector apply_exponential(const PauliWord& generator, double tau,
                              const StateVector& v) {
  if (generator.n_qubits() != v.n_qubits)
    throw std::invalid_argument("apply_exponential: dimension mismatch");
  QubitOperator p(generator.n_qubits());
  p.add_term(generator, zx_coeff(generator, {1.0, 0.0}));
  StateVector pv = apply(p, v);
  StateVector out = StateVector::zero(v.n_qubits);
  const double c = std::cos(0.5 * tau), s = std::sin(0.5 * tau);
  const Complex f{0.0, -s};
  for (size_t i = 0; i < out.amplitudes.size(); ++i)
    out.amplitudes[i] = c * v.amplitudes[i] + f * pv.amplitudes[i];
  return out;
}

Eigen::MatrixXcd dense_matrix(const QubitOperator& op) {
  if (op.n_qubits() > 14)
    throw std::invalid_argument("dense matrix limited to 14 qubits");
  const uint64_t dim = uint64_t{1} << op.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : op.sorted_terms()) {
    const uint64_t z = term.word.z_mask().low64();
    const uint64_t x = term.word.x_mask().low64();
    for (uint64_t b = 0; b < dim; ++b) {
      const uint64_t t = b ^ x;
      m(t, b) += (std::popcount(z & t) & 1) ? -term.coeff : term.coeff;
    }
  }
  return m;
}

namespace {

GroundState lanczos_ground(const QubitOperator& op, const OracleOptions& opt) {
  const uint64_t dim = uint64_t{1} << op.n_qubits();
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  StateVector v = StateVector::zero(op.n_qubits());
  for (Complex& a : v.amplitudes) a = Complex{gauss(rng), gauss(rng)};
  v.normalize();

  const int max_restarts = 60;
  const size_t krylov = std::min<uint64_t>(dim, 60);
  GroundState best;
  for (int restart = 0; restart < max_restarts; ++restart) {
    std::vector<StateVector> basis;
    basis.push_back(v);
    std::vector<double> alpha, beta;
    for (size_t j = 0; j < krylov; ++j) {
      StateVector w = apply(op, basis[j], opt.threads);
      alpha.push_back(inner(basis[j], w).real());
      // full reorthogonalization, two passes
      for (int pass = 0; pass < 2; ++pass) {
        for (const StateVector& b : basis) {
          const Complex c = inner(b, w);
          for (size_t i = 0; i < w.amplitudes.size(); ++i)
            w.amplitudes[i] -= c * b.amplitudes[i];
        }
      }
      const double nb = w.norm();
      if (nb < 1e-12) break;  // invariant subspace reached
      beta.push_back(nb);
      for (Complex& a : w.amplitudes) a /= nb;
      basis.push_back(std::move(w));
    }

    const size_t k = alpha.size();
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (size_t i = 0; i < k; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
    const Eigen::VectorXd ritz = solver.eigenvectors().col(0);

    StateVector ground = StateVector::zero(op.n_qubits());
    for (size_t j = 0; j < k; ++j)
      for (size_t i = 0; i < ground.amplitudes.size(); ++i)
        ground.amplitudes[i] += ritz(j) * basis[j].amplitudes[i];
    ground.normalize();

    StateVector hg = apply(op, ground, opt.threads);
    const double energy = inner(ground, hg).real();
    double res = 0.0;
    for (size_t i = 0; i < hg.amplitudes.size(); ++i)
      res += std::norm(hg.amplitudes[i] - energy * ground.amplitudes[i]);
    res = std::sqrt(res);

    best = {energy, ground};
    if (res < opt.residual_tol) return best;
    v = std::move(best.vector);  // restart from the current Ritz vector
    best.vector = v;
  }
  throw std::runtime_error("lanczos failed to reach the residual tolerance");
}

}  // namespace

GroundState ground_energy(const QubitOperator& op, const OracleOptions& opt) {
  if (op.n_qubits() > opt.max_qubits)
    throw std::invalid_argument("ground_energy: " + std::to_string(op.n_qubits()) +
                                " qubits exceeds the cap of " +
                                std::to_string(opt.max_qubits));
  if (op.hermiticity_deviation() > 1e-9)
    throw std::invalid_argument("ground_energy requires a hermitian operator");
  if (op.empty()) {
    GroundState g;
    g.vector = StateVector::zero(op.n_qubits());
    g.vector.amplitudes[0] = 1.0;
    return g;
  }

  if (op.n_qubits() > opt.dense_threshold) return lanczos_ground(op, opt);

  Eigen::MatrixXcd m = dense_matrix(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense diagonalization failed");
  GroundState g;
  g.energy = solver.eigenvalues()(0);
  g.vector = StateVector::zero(op.n_qubits());
  for (uint64_t i = 0; i < g.vector.amplitudes.size(); ++i)
    g.vector.amplitudes[i] = solver.eigenvectors()(i, 0);

  StateVector hv = apply(op, g.vector);
  double res = 0.0;
  for (size_t i = 0; i < hv.amplitudes.size(); ++i)
    res += std::norm(hv.amplitudes[i] - g.energy * g.vector.amplitudes[i]);
  if (std::sqrt(res) > opt.residual_tol)
    throw std::runtime_error("ground-state residual exceeds tolerance");
  return g;
}

}  // namespace iqcc

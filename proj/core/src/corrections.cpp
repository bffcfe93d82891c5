/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/corrections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace iqcc {

namespace {

struct Accumulator {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double lowest_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen solve failed");
  return solver.eigenvalues()(0);
}

// The self-consistency target of the BW correction, g(d) = d + sum w^2/(D-d).
// Strictly increasing below the lowest pole, so the physical root brackets.
double bw_residual(const CorrectionInput& input, double d) {
  Accumulator acc;
  acc.add(d);
  for (const DISGroup& g : input.groups)
    acc.add(g.omega * g.omega / (g.denom - d));
  return acc.sum;
}

double bw_bracketed_solve(const CorrectionInput& input, double tol,
                          int& iterations, bool& ok) {
  double pole = 0.0;  // brackets must stay below min(0, min D_j over coupled groups)
  double scale = 1.0;
  for (const DISGroup& g : input.groups) {
    if (g.omega <= 0.0) continue;
    pole = std::min(pole, g.denom);
    scale = std::max({scale, std::abs(g.denom), g.omega});
  }
  double eta = 1e-8 * scale;
  double hi = pole - eta;
  int guard = 0;
  while (bw_residual(input, hi) <= 0.0 && guard++ < 200) {
    eta *= 0.5;
    hi = pole - eta;
  }
  double width = scale;
  double lo = hi - width;
  guard = 0;
  while (bw_residual(input, lo) > 0.0 && guard++ < 200) {
    width *= 2.0;
    lo -= width;
  }
  if (bw_residual(input, hi) <= 0.0 || bw_residual(input, lo) > 0.0) {
    ok = false;
    return hi;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-18 * scale; ++it) {
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    if (bw_residual(input, mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  // Newton polish; g'(d) >= 1 everywhere on the bracket.
  double d = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    ++iterations;
    double deriv = 1.0;
    for (const DISGroup& g : input.groups) {
      const double gap = g.denom - d;
      deriv += g.omega * g.omega / (gap * gap);
    }
    const double step = bw_residual(input, d) / deriv;
    const double next = d - step;
    if (next <= lo || next >= hi) break;
    d = next;
    if (std::abs(step) < 0.5 * tol) break;
  }
  ok = true;
  return d;
}

}  // namespace

En2Result en2(const CorrectionInput& input, double divergence_floor) {
  En2Result result;
  Accumulator acc;
  for (const DISGroup& g : input.groups) {
    if (std::abs(g.denom) < divergence_floor) {
      ++result.n_skipped;
      continue;
    }
    acc.add(-g.omega * g.omega / g.denom);
  }
  result.delta = acc.sum;
  return result;
}

double duc(const CorrectionInput& input) {
  Accumulator acc;
  for (const DISGroup& g : input.groups) {
    const double half_d = 0.5 * g.denom;
    // D/2 - sqrt((D/2)^2 + w^2); for D >= 0 the rationalized form avoids
    // the cancellation between two nearly equal magnitudes
    if (half_d >= 0.0)
      acc.add(-g.omega * g.omega / (half_d + std::hypot(half_d, g.omega)));
    else
      acc.add(half_d - std::hypot(half_d, g.omega));
  }
  return acc.sum;
}

BWResult bw(const CorrectionInput& input, const BWOptions& options) {
  BWResult result;
  if (input.groups.empty()) {
    result.converged = true;
    return result;
  }
  double scale = 1.0;
  // the physical (lowest) solution lies below every coupled pole and 0
  double pole = 0.0;
  bool any_coupled = false;
  for (const DISGroup& g : input.groups) {
    scale = std::max({scale, std::abs(g.denom), g.omega});
    if (g.omega > 0.0) {
      pole = std::min(pole, g.denom);
      any_coupled = true;
    }
  }
  if (!any_coupled) {
    result.converged = true;
    return result;
  }

  double d = 0.0;
  double prev_step = 0.0;
  const int plain_budget = std::max(options.max_iter / 2, 8);
  for (int it = 0; it < plain_budget; ++it) {
    ++result.iterations;
    Accumulator acc;
    bool singular = false;
    for (const DISGroup& g : input.groups) {
      const double gap = g.denom - d;
      if (std::abs(gap) < 1e-14 * scale) {
        singular = true;
        break;
      }
      acc.add(-g.omega * g.omega / gap);
    }
    if (singular) break;
    const double step = acc.sum - d;
    if (std::abs(step) < options.tol) {
      // accept only the physical branch; the plain map can be attracted
      // to an upper root when some D_j <= 0
      if (acc.sum <= pole) {
        result.delta = acc.sum;
        result.converged = true;
        return result;
      }
      break;
    }
    // damp on oscillation; the plain map overshoots near degeneracy
    d += (step * prev_step < 0.0) ? 0.5 * step : step;
    prev_step = step;
  }

  bool ok = false;
  result.delta = bw_bracketed_solve(input, options.tol, result.iterations, ok);
  result.converged = ok && result.iterations <= options.max_iter + 208;
  if (!ok) result.delta = d;
  return result;
}

CiResult ci_in_dis(const IsingDecomposition& dec, const MeanFieldState& state,
                   const std::vector<DISGroup>& groups, size_t dim_cap) {
  const size_t dim = groups.size() + 1;
  if (dim > dim_cap)
    throw std::invalid_argument("ci_in_dis dimension " + std::to_string(dim) +
                                " exceeds cap " + std::to_string(dim_cap));
  std::vector<QubitMask> basis;
  basis.reserve(dim);
  basis.emplace_back(dec.n_qubits());
  for (const DISGroup& g : groups) basis.push_back(g.flip);

  Eigen::MatrixXcd m(dim, dim);
  for (size_t i = 0; i < dim; ++i) {
    m(i, i) = pair_coupling(dec, state, basis[i], basis[i]).real();
    for (size_t j = i + 1; j < dim; ++j) {
      const Complex hij = pair_coupling(dec, state, basis[i], basis[j]);
      m(i, j) = hij;
      m(j, i) = std::conj(hij);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("ci_in_dis eigen solve failed");
  CiResult result;
  result.energy = solver.eigenvalues()(0);
  result.eigenvector = solver.eigenvectors().col(0);
  return result;
}

CiResult ci_in_dis(const QubitOperator& op, const MeanFieldState& state,
                   const std::vector<DISGroup>& groups, size_t dim_cap) {
  return ci_in_dis(ising_decompose(op), state, groups, dim_cap);
}

double effective_hamiltonian(const IsingDecomposition& dec,
                             const MeanFieldState& state,
                             const std::vector<DISGroup>& groups, size_t m,
                             const EffHeffOptions& options) {
  const size_t n_states = groups.size() + 1;
  if (m < 1 || m > n_states)
    throw std::invalid_argument("effective_hamiltonian: m must be in [1, N+1]");

  std::vector<QubitMask> block, external;
  block.emplace_back(dec.n_qubits());
  for (size_t i = 0; i + 1 < m; ++i) block.push_back(groups[i].flip);
  for (size_t i = m - 1; i < groups.size(); ++i) external.push_back(groups[i].flip);

  Eigen::MatrixXcd h(m, m);
  for (size_t i = 0; i < m; ++i) {
    h(i, i) = pair_coupling(dec, state, block[i], block[i]).real();
    for (size_t j = i + 1; j < m; ++j) {
      const Complex hij = pair_coupling(dec, state, block[i], block[j]);
      h(i, j) = hij;
      h(j, i) = std::conj(hij);
    }
  }
  const size_t n_ext = external.size();
  if (n_ext == 0) return lowest_eigenvalue(h);

  Eigen::MatrixXcd b(n_ext, m);
  Eigen::VectorXd c_diag(n_ext);
  for (size_t e = 0; e < n_ext; ++e) {
    for (size_t j = 0; j < m; ++j)
      b(e, j) = pair_coupling(dec, state, external[e], block[j]);
    c_diag(e) = pair_coupling(dec, state, external[e], external[e]).real();
  }

  double scale = 1.0;
  for (size_t e = 0; e < n_ext; ++e)
    scale = std::max(scale, std::abs(c_diag(e)));
  // the physical (lowest) solution lies below every coupled external energy
  double pole = std::numeric_limits<double>::infinity();
  for (size_t e = 0; e < n_ext; ++e)
    if (b.row(e).norm() > 0.0) pole = std::min(pole, c_diag(e));
  if (!std::isfinite(pole)) return lowest_eigenvalue(h);

  auto heff_lowest = [&](double energy) {
    Eigen::MatrixXcd heff = h;
    for (size_t e = 0; e < n_ext; ++e) {
      const double gap = c_diag(e) - energy;
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
          heff(i, j) -= std::conj(b(e, i)) * b(e, j) / gap;
    }
    return lowest_eigenvalue(heff);
  };

  double energy = lowest_eigenvalue(h);
  double prev_step = 0.0;
  int shift_retries = 0;
  for (int it = 0; it < options.max_iter; ++it) {
    bool singular = false;
    for (size_t e = 0; e < n_ext; ++e)
      if (std::abs(c_diag(e) - energy) < 1e-12 * scale) singular = true;
    if (singular) {
      if (++shift_retries > 5)
        throw std::runtime_error(
            "effective_hamiltonian: resolvent singular at E = " +
            std::to_string(energy));
      energy -= 1e-9 * scale * shift_retries;
      continue;
    }
    const double next = heff_lowest(energy);
    const double step = next - energy;
    if (std::abs(step) < options.tol) {
      if (next < pole) return next;  // reject upper-branch fixed points
      break;
    }
    energy += (step * prev_step < 0.0) ? 0.5 * step : step;
    prev_step = step;
  }

  // Bracketed fallback: G(E) = lowest_eig(h_eff(E)) - E decreases strictly
  // below the lowest coupled pole, so the physical root is bracketed.
  double eta = 1e-8 * scale;
  double hi = pole - eta;
  int guard = 0;
  while (heff_lowest(hi) - hi >= 0.0 && guard++ < 100) {
    eta *= 0.5;  // approach the pole until the residual turns negative
    hi = pole - eta;
  }
  double width = scale;
  double lo = hi - width;
  guard = 0;
  while (heff_lowest(lo) - lo < 0.0 && guard++ < 100) {
    width *= 2.0;
    lo -= width;
  }
  for (int it = 0; it < 200 && hi - lo > 0.5 * options.tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (heff_lowest(mid) - mid < 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double effective_hamiltonian(const QubitOperator& op,
                             const MeanFieldState& state,
                             const std::vector<DISGroup>& groups, size_t m,
                             const EffHeffOptions& options) {
  return effective_hamiltonian(ising_decompose(op), state, groups, m, options);
}

}  // namespace iqcc

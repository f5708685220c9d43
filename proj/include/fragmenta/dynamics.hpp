// Copyright 2026 The Fragmenta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fragmenta/config.hpp"
#include "fragmenta/encoding.hpp"
#include "fragmenta/lattice.hpp"
#include "fragmenta/linalg.hpp"

namespace fragmenta {

/// Constrained model: -h sum_i X_i (P^{0000}_i + P^{1111}_i). Off-diagonal only,
/// one -h entry per legal flip.
inline SparseOperator build_heff(const Lattice& lat, double h) {
  const std::size_t dim = state_dimension(lat);
  const PackedShifts shifts(lat);
  std::vector<SparseOperator::Entry> e;
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::uint64_t m = shifts.flippable(c); m != 0; m &= m - 1) e.push_back({c ^ (m & (~m + 1)), c, -h});
  }
  return SparseOperator::from_entries(dim, std::move(e), true);
}

/// -J sum_p CZ_p - h sum_i X_i.
inline SparseOperator build_hczp(const Lattice& lat, double J, double h) {
  const std::size_t dim = state_dimension(lat);
  const PackedShifts shifts(lat);
  const int np = lat.num_plaquettes();
  std::vector<SparseOperator::Entry> e;
  e.reserve(dim * (lat.num_sites() + 1));
  for (std::size_t c = 0; c < dim; ++c) {
    const int minus = std::popcount(shifts.intersections(c));
    e.push_back({c, c, -J * (np - 2 * minus)});
    for (int i = 0; i < lat.num_sites(); ++i) e.push_back({c ^ (std::size_t{1} << i), c, -h});
  }
  return SparseOperator::from_entries(dim, std::move(e), true);
}

enum class PerturbationKind { None, SymTransverse, SymZzNnn, BreakLongitudinalRandom, BreakZzNn };

inline std::string to_string(PerturbationKind k) {
  switch (k) {
    case PerturbationKind::None: return "none";
    case PerturbationKind::SymTransverse: return "sym_transverse";
    case PerturbationKind::SymZzNnn: return "sym_zz_nnn";
    case PerturbationKind::BreakLongitudinalRandom: return "break_longitudinal_random";
    case PerturbationKind::BreakZzNn: return "break_zz_nn";
  }
  return "?";
}

inline PerturbationKind parse_perturbation(const std::string& s) {
  for (auto k : {PerturbationKind::None, PerturbationKind::SymTransverse, PerturbationKind::SymZzNnn,
                 PerturbationKind::BreakLongitudinalRandom, PerturbationKind::BreakZzNn}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown perturbation kind '" + s + "'");
}

inline bool is_symmetric(PerturbationKind k) {
  return k == PerturbationKind::None || k == PerturbationKind::SymTransverse || k == PerturbationKind::SymZzNnn;
}

/// Frobenius norm of [op, X_s], computed entrywise: [V, X][r,c] = V[r, c^m] - V[r^m, c].
inline double toggle_commutator_residual(const SparseOperator& op, const Lattice& lat, Sublattice s) {
  const std::uint64_t m = lat.sublattice_mask(s);
  double acc = 0;
  for (std::size_t r = 0; r < op.dimension(); ++r) {
    const auto cols = op.row_cols(r);
    const auto vals = op.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const Complex partner = op.at(r ^ m, cols[k] ^ m);
      // a missing partner contributes |v|^2 from both positions of the pair
      acc += partner == Complex{0, 0} ? 2 * std::norm(vals[k]) : std::norm(vals[k] - partner);
    }
  }
  return std::sqrt(acc);
}

/// Signs c_i in {+1,-1} for the random longitudinal field, one 64-bit draw per site.
inline std::vector<int> longitudinal_signs(const Lattice& lat, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> c(lat.num_sites());
  for (int& v : c) v = (rng() >> 63) ? 1 : -1;
  return c;
}

/// Same-sublattice next-nearest (diagonal) pairs, each listed once.
inline std::vector<std::pair<int, int>> diagonal_pairs(const Lattice& lat) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < lat.num_sites(); ++i) {
    const int x = lat.x_of(i), y = lat.y_of(i);
    out.emplace_back(i, lat.site(x + 1, y + 1));
    out.emplace_back(i, lat.site(x + 1, y - 1));
  }
  return out;
}

inline std::vector<std::pair<int, int>> nearest_pairs(const Lattice& lat) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < lat.num_sites(); ++i) {
    out.emplace_back(i, lat.neighbors(i)[0]);
    out.emplace_back(i, lat.neighbors(i)[2]);
  }
  return out;
}

/// lambda * V for the requested kind. Symmetric kinds are checked to commute
/// with X_A and X_B exactly; breaking kinds are checked not to.
inline SparseOperator build_perturbation(const Lattice& lat, PerturbationKind kind, double lambda, std::uint64_t seed) {
  const std::size_t dim = state_dimension(lat);
  std::vector<SparseOperator::Entry> e;
  auto zz_diagonal = [&](const std::vector<std::pair<int, int>>& pairs) {
    for (std::size_t c = 0; c < dim; ++c) {
      int sum = 0;
      for (auto [i, j] : pairs) sum += ((c >> i) ^ (c >> j)) & 1U ? -1 : 1;
      e.push_back({c, c, lambda * sum});
    }
  };
  switch (kind) {
    case PerturbationKind::None:
      return SparseOperator(dim);
    case PerturbationKind::SymTransverse:
      for (std::size_t c = 0; c < dim; ++c) {
        for (int i = 0; i < lat.num_sites(); ++i) e.push_back({c ^ (std::size_t{1} << i), c, lambda});
      }
      break;
    case PerturbationKind::SymZzNnn:
      zz_diagonal(diagonal_pairs(lat));
      break;
    case PerturbationKind::BreakZzNn:
      zz_diagonal(nearest_pairs(lat));
      break;
    case PerturbationKind::BreakLongitudinalRandom: {
      const auto signs = longitudinal_signs(lat, seed);
      for (std::size_t c = 0; c < dim; ++c) {
        int sum = 0;
        for (int i = 0; i < lat.num_sites(); ++i) sum += (c >> i) & 1U ? -signs[i] : signs[i];
        e.push_back({c, c, lambda * sum});
      }
      break;
    }
  }
  SparseOperator v = SparseOperator::from_entries(dim, std::move(e), true);
  if (lambda != 0) {
    const double ra = toggle_commutator_residual(v, lat, Sublattice::A);
    const double rb = toggle_commutator_residual(v, lat, Sublattice::B);
    if (is_symmetric(kind) && (ra != 0 || rb != 0)) {
      throw std::logic_error(to_string(kind) + " does not commute with the sublattice toggles");
    }
    if (!is_symmetric(kind) && ra == 0 && rb == 0) {
      throw std::logic_error(to_string(kind) + " unexpectedly commutes with both sublattice toggles");
    }
  }
  return v;
}

class EvolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvolveOptions {
  int krylov_dim = 30;
  int max_substeps = 1'000'000;
};

struct EvolveStats {
  int substeps = 0;
  int matvecs = 0;
  double max_error_estimate = 0;
};

/// exp(-i H t) |psi> by a Lanczos propagator. Each substep builds a Krylov
/// basis of at most krylov_dim vectors (fully reorthogonalized), exponentiates
/// the tridiagonal projection exactly, and shrinks the substep until the
/// a-posteriori error estimate beta_m |[exp(-i T tau)]_{m-1,0}| is <= tol.
/// An invariant Krylov space (happy breakdown) makes the step exact.
inline StateVector evolve(std::span<const Complex> psi, const SparseOperator& H, double t, double tol = 1e-10,
                          const EvolveOptions& opts = {}, EvolveStats* stats = nullptr) {
  if (psi.size() != H.dimension()) throw std::invalid_argument("state and Hamiltonian dimensions differ");
  if (t < 0) throw std::invalid_argument("evolve expects t >= 0");
  if (tol < 1e-12) throw std::invalid_argument("evolve tolerance must be >= 1e-12");
  const std::size_t dim = psi.size();
  StateVector cur(psi.begin(), psi.end());
  EvolveStats local;
  const int mmax = std::max(2, std::min<int>(opts.krylov_dim, static_cast<int>(dim)));
  std::vector<StateVector> basis(mmax + 1, StateVector(dim));
  StateVector w(dim);
  const double scale = std::max(1.0, H.max_row_sum());
  double remaining = t;
  double tau_guess = t;

  while (remaining > 0) {
    if (++local.substeps > opts.max_substeps) throw EvolutionError("propagator exceeded the substep cap");
    const double beta0 = norm(cur);
    if (beta0 == 0) break;
    for (std::size_t k = 0; k < dim; ++k) basis[0][k] = cur[k] / beta0;
    std::vector<double> alpha, beta;
    bool invariant = false;
    int m = 0;
    Eigen::VectorXd lam;
    Eigen::MatrixXd q;
    auto diagonalize = [&](int size) {
      Eigen::VectorXd diag(size), sub(std::max(0, size - 1));
      for (int k = 0; k < size; ++k) diag(k) = alpha[k];
      for (int k = 0; k + 1 < size; ++k) sub(k) = beta[k];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
      eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      lam = eig.eigenvalues();
      q = eig.eigenvectors();
    };
    auto propagate = [&](double tau) {
      Eigen::VectorXcd y = Eigen::VectorXcd::Zero(lam.size());
      for (int k = 0; k < lam.size(); ++k) y += q.col(k) * (std::polar(1.0, -lam(k) * tau) * q(0, k));
      return y;
    };
    const double target = std::min(remaining, tau_guess);
    for (int j = 0; j < mmax; ++j) {
      H.multiply(basis[j], w);
      ++local.matvecs;
      alpha.push_back(inner(basis[j], w).real());
      as_eigen(w) -= alpha.back() * as_eigen(basis[j]);
      if (j > 0) as_eigen(w) -= beta.back() * as_eigen(basis[j - 1]);
      // full reorthogonalization; a second pass only when the first cancelled heavily
      double b = norm(w);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const Complex proj = inner(basis[i], w);
          as_eigen(w) -= proj * as_eigen(basis[i]);
        }
        const double after = norm(w);
        const bool settled = after > 0.7 * b;
        b = after;
        if (settled) break;
      }
      m = j + 1;
      if (b <= 1e-13 * scale) {
        invariant = true;
        break;
      }
      beta.push_back(b);
      for (std::size_t k = 0; k < dim; ++k) basis[j + 1][k] = w[k] / b;
      if (m >= 4 && m < mmax) {
        diagonalize(m);
        if (b * std::abs(propagate(target)(m - 1)) * beta0 <= tol) break;
      }
    }

    diagonalize(m);
    const double next_beta = invariant ? 0.0 : beta.back();

    double tau = std::min(remaining, invariant ? remaining : tau_guess);
    Eigen::VectorXcd y = propagate(tau);
    double err = next_beta * std::abs(y(m - 1)) * beta0;
    while (err > tol) {
      tau *= 0.5;
      if (tau < 1e-14 * std::max(1.0, t)) throw EvolutionError("propagator step size underflow");
      y = propagate(tau);
      err = next_beta * std::abs(y(m - 1)) * beta0;
    }
    local.max_error_estimate = std::max(local.max_error_estimate, err);
    std::fill(cur.begin(), cur.end(), Complex{0, 0});
    for (int j = 0; j < m; ++j) as_eigen(cur) += (beta0 * y(j)) * as_eigen(basis[j]);
    remaining -= tau;
    if (remaining < 1e-15 * std::max(1.0, t)) remaining = 0;
    tau_guess = invariant ? tau_guess : 2 * tau;
  }
  if (stats) *stats = local;
  return cur;
}

inline double energy(const SparseOperator& H, std::span<const Complex> psi) { return H.expectation(psi).real(); }

enum class HamiltonianKind { Heff, Czp };

inline HamiltonianKind parse_hamiltonian(const std::string& s) {
  if (s == "heff") return HamiltonianKind::Heff;
  if (s == "czp") return HamiltonianKind::Czp;
  throw std::invalid_argument("unknown hamiltonian '" + s + "'");
}

inline std::string to_string(HamiltonianKind k) { return k == HamiltonianKind::Heff ? "heff" : "czp"; }

/// Parameters of a coherence run; time is measured in units of 1/h.
struct ModelSpec {
  HamiltonianKind hamiltonian = HamiltonianKind::Heff;
  PerturbationKind perturbation = PerturbationKind::None;
  double lambda = 0.0;
  double J = 1.0;
  double h = 1.0;
  std::uint64_t seed = 0;
};

inline SparseOperator build_hamiltonian(const Lattice& lat, const ModelSpec& spec) {
  SparseOperator H = spec.hamiltonian == HamiltonianKind::Heff ? build_heff(lat, spec.h) : build_hczp(lat, spec.J, spec.h);
  if (spec.perturbation != PerturbationKind::None && spec.lambda != 0) {
    H = H + build_perturbation(lat, spec.perturbation, spec.lambda, spec.seed);
  }
  H.set_hermitian(true);
  return H;
}

struct CoherenceSeries {
  std::vector<double> times;
  std::vector<Tomography> tomography;
  std::vector<double> fidelity;  // |<psi(0)|psi(t)>|
};

inline std::vector<double> uniform_grid(double tmax, int steps) {
  if (steps < 1) throw std::invalid_argument("time grid needs at least one step");
  std::vector<double> out(steps + 1);
  for (int k = 0; k <= steps; ++k) out[k] = tmax * k / steps;
  return out;
}

/// Evolves an in-block logical state over a nondecreasing time grid and
/// records logical tomography at each grid point. The default initial state
/// is (|alpha;00> + |alpha;10>)/sqrt(2), i.e. <X_A> = 1.
inline CoherenceSeries coherence_experiment(const LogicalBlock& block, const Lattice& lat, const SparseOperator& H,
                                            const std::vector<double>& times, double tol = 1e-10,
                                            std::array<Complex, 4> initial = {Complex{1 / std::numbers::sqrt2}, 0, Complex{1 / std::numbers::sqrt2}, 0}) {
  const LogicalOperators ops = logical_operators(block, lat);
  const StateVector psi0 = logical_state(block, lat, initial);
  StateVector psi = psi0;
  CoherenceSeries series;
  double now = 0;
  for (double t : times) {
    if (t < now) throw std::invalid_argument("time grid must be nondecreasing and start at t >= 0");
    if (t > now) psi = evolve(psi, H, t - now, tol);
    now = t;
    series.times.push_back(t);
    series.tomography.push_back(logical_tomography(psi, ops));
    series.fidelity.push_back(std::abs(inner(psi0, psi)));
  }
  return series;
}

}  // namespace fragmenta

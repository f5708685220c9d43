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
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fragmenta/config.hpp"
#include "fragmenta/fragmentation.hpp"
#include "fragmenta/lattice.hpp"
#include "fragmenta/linalg.hpp"

namespace fragmenta {

/// Raised when a code state is fixed by a nontrivial sublattice toggle, so
/// its orbit has fewer than four members.
class OrbitDegeneracy : public std::runtime_error {
 public:
  explicit OrbitDegeneracy(const SpinConfig& cfg)
      : std::runtime_error("symmetry orbit of a code state has fewer than 4 members:\n" + format_config(cfg)),
        config_(cfg) {}
  const SpinConfig& config() const { return config_; }

 private:
  SpinConfig config_;
};

inline constexpr int member_index(int sigma_a, int sigma_b) { return 2 * sigma_a + sigma_b; }

/// {cfg, X_B cfg, X_A cfg, X_A X_B cfg}, indexed by member_index(sigma_A, sigma_B).
inline std::array<SpinConfig, 4> symmetry_orbit(const SpinConfig& cfg, const Lattice& lat) {
  if (!is_code_state(cfg, lat)) throw std::invalid_argument("symmetry_orbit expects a code state");
  const std::uint64_t a = lat.sublattice_mask(Sublattice::A);
  const std::uint64_t b = lat.sublattice_mask(Sublattice::B);
  const int L = lat.size();
  std::array<SpinConfig, 4> orbit{SpinConfig(cfg.bits(), L), SpinConfig(cfg.bits() ^ b, L), SpinConfig(cfg.bits() ^ a, L),
                                  SpinConfig(cfg.bits() ^ a ^ b, L)};
  const std::set<SpinConfig> distinct(orbit.begin(), orbit.end());
  if (distinct.size() != 4) throw OrbitDegeneracy(cfg);
  return orbit;
}

/// Four symmetry-related code states encoding two logical qubits.
/// members[member_index(sA, sB)] = X_A^sA X_B^sB alpha, and alpha is the
/// smallest of the four packed words.
struct LogicalBlock {
  SpinConfig alpha;
  std::array<SpinConfig, 4> members;

  const SpinConfig& member(int sigma_a, int sigma_b) const { return members[member_index(sigma_a, sigma_b)]; }

  /// Physical bit sigma^alpha_j of the reference state.
  bool reference_bit(int site) const { return alpha.get(site); }
};

inline LogicalBlock make_block(const SpinConfig& cfg, const Lattice& lat) {
  const auto orbit = symmetry_orbit(cfg, lat);
  const SpinConfig alpha = *std::min_element(orbit.begin(), orbit.end());
  return {alpha, symmetry_orbit(alpha, lat)};
}

struct BlockInventory {
  int L = 0;
  std::uint64_t code_states = 0;
  std::vector<LogicalBlock> blocks;      // sorted by alpha
  std::vector<SpinConfig> degenerate;    // code states whose orbit collapsed

  std::uint64_t logical_qubits() const { return 2 * blocks.size(); }
  bool consistent() const { return degenerate.empty() && 4 * blocks.size() == code_states; }
};

inline std::vector<SpinConfig> enumerate_code_states(const Lattice& lat) {
  if (lat.num_sites() > kMaxBruteForceSites) throw std::length_error("code-state enumeration limited by brute force cap");
  const PackedShifts shifts(lat);
  std::vector<SpinConfig> out;
  const std::uint64_t dim = std::uint64_t{1} << lat.num_sites();
  for (std::uint64_t c = 0; c < dim; ++c) {
    if (shifts.flippable(c) == 0 && shifts.intersections(c) == 0) out.emplace_back(c, lat.size());
  }
  return out;
}

inline BlockInventory enumerate_blocks(const Lattice& lat) {
  BlockInventory inv;
  inv.L = lat.size();
  const auto codes = enumerate_code_states(lat);
  inv.code_states = codes.size();
  std::set<SpinConfig> covered;
  for (const SpinConfig& c : codes) {
    if (covered.count(c)) continue;
    try {
      LogicalBlock block = make_block(c, lat);
      covered.insert(block.members.begin(), block.members.end());
      inv.blocks.push_back(block);
    } catch (const OrbitDegeneracy&) {
      covered.insert(c);
      inv.degenerate.push_back(c);
    }
  }
  std::sort(inv.blocks.begin(), inv.blocks.end(),
            [](const LogicalBlock& a, const LogicalBlock& b) { return a.alpha < b.alpha; });
  return inv;
}

enum class LogicalKind { I, X, Y, Z };

inline char to_char(LogicalKind k) { return "IXYZ"[static_cast<int>(k)]; }

/// Permutation operator X_s on the full 2^{L^2} space.
inline SparseOperator toggle_operator(const Lattice& lat, Sublattice s) {
  const std::size_t dim = state_dimension(lat);
  const std::uint64_t mask = lat.sublattice_mask(s);
  SparseOperator op = SparseOperator::permutation(dim, [mask](std::size_t k) { return k ^ mask; });
  op.set_hermitian(true);
  return op;
}

/// Projector onto the two members with sigma_s = 0. This plays the role of
/// P_alpha in the logical operator formulas for qubit s, so that the A and B
/// qubits share the block projector as identity and commute with each other.
inline SparseOperator half_block_projector(const LogicalBlock& block, const Lattice& lat, Sublattice s) {
  const std::size_t dim = state_dimension(lat);
  const SpinConfig& partner = s == Sublattice::A ? block.member(0, 1) : block.member(1, 0);
  return SparseOperator::from_entries(dim, {{block.alpha.index(), block.alpha.index(), 1.0}, {partner.index(), partner.index(), 1.0}},
                                      true);
}

inline SparseOperator block_projector(const LogicalBlock& block, const Lattice& lat) {
  std::vector<SparseOperator::Entry> e;
  for (const auto& m : block.members) e.push_back({m.index(), m.index(), 1.0});
  return SparseOperator::from_entries(state_dimension(lat), std::move(e), true);
}

/// I = P + X_s P X_s, Z = P - X_s P X_s, X = {P, X_s}, Y = -i [P, X_s].
inline SparseOperator logical_operator(const LogicalBlock& block, const Lattice& lat, Sublattice s, LogicalKind kind) {
  const SparseOperator p = half_block_projector(block, lat, s);
  const SparseOperator xs = toggle_operator(lat, s);
  SparseOperator op;
  switch (kind) {
    case LogicalKind::I: op = p + xs * p * xs; break;
    case LogicalKind::Z: op = p - xs * p * xs; break;
    case LogicalKind::X: op = anticommutator(p, xs); break;
    case LogicalKind::Y: op = Complex{0, -1} * commutator(p, xs); break;
  }
  op.set_hermitian(true);
  return op;
}

/// The eight logical operators of one block, built once for repeated readout.
struct LogicalOperators {
  std::array<SparseOperator, 4> a;  // indexed by LogicalKind
  std::array<SparseOperator, 4> b;

  const SparseOperator& get(Sublattice s, LogicalKind k) const {
    return (s == Sublattice::A ? a : b)[static_cast<std::size_t>(k)];
  }
};

inline LogicalOperators logical_operators(const LogicalBlock& block, const Lattice& lat) {
  LogicalOperators ops;
  for (LogicalKind k : {LogicalKind::I, LogicalKind::X, LogicalKind::Y, LogicalKind::Z}) {
    ops.a[static_cast<std::size_t>(k)] = logical_operator(block, lat, Sublattice::A, k);
    ops.b[static_cast<std::size_t>(k)] = logical_operator(block, lat, Sublattice::B, k);
  }
  return ops;
}

/// 4x4 matrix of op between block members, rows/cols in member_index order.
inline Eigen::Matrix4cd restrict_to_block(const SparseOperator& op, const LogicalBlock& block) {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = op.at(block.members[r].index(), block.members[c].index());
  }
  return m;
}

struct AlgebraCheck {
  std::string identity;
  double residual;
};

struct AlgebraReport {
  std::vector<AlgebraCheck> checks;
  double max_residual = 0;
};

/// Squares, Pauli commutators and cross-qubit commutation, evaluated as
/// sparse identities on the full space (so anything leaking out of the block
/// would also show up as residual).
inline AlgebraReport verify_pauli_algebra(const LogicalBlock& block, const Lattice& lat) {
  const LogicalOperators ops = logical_operators(block, lat);
  const SparseOperator block_id = block_projector(block, lat);
  AlgebraReport rep;
  auto add = [&rep](std::string name, const SparseOperator& diff) {
    const double r = diff.frobenius_norm();
    rep.max_residual = std::max(rep.max_residual, r);
    rep.checks.push_back({std::move(name), r});
  };
  const Complex two_i{0, 2};
  for (Sublattice s : {Sublattice::A, Sublattice::B}) {
    const std::string tag(1, to_char(s));
    const auto& I = ops.get(s, LogicalKind::I);
    const auto& X = ops.get(s, LogicalKind::X);
    const auto& Y = ops.get(s, LogicalKind::Y);
    const auto& Z = ops.get(s, LogicalKind::Z);
    add("I_" + tag + " = block projector", I - block_id);
    add("X_" + tag + "^2 = I", X * X - I);
    add("Y_" + tag + "^2 = I", Y * Y - I);
    add("Z_" + tag + "^2 = I", Z * Z - I);
    add("[X_" + tag + ",Y_" + tag + "] = 2iZ", commutator(X, Y) - two_i * Z);
    add("[Y_" + tag + ",Z_" + tag + "] = 2iX", commutator(Y, Z) - two_i * X);
    add("[Z_" + tag + ",X_" + tag + "] = 2iY", commutator(Z, X) - two_i * Y);
  }
  for (LogicalKind ka : {LogicalKind::X, LogicalKind::Y, LogicalKind::Z}) {
    for (LogicalKind kb : {LogicalKind::X, LogicalKind::Y, LogicalKind::Z}) {
      add(std::string("[") + to_char(ka) + "_A," + to_char(kb) + "_B] = 0",
          commutator(ops.get(Sublattice::A, ka), ops.get(Sublattice::B, kb)));
    }
  }
  return rep;
}

/// sum_{sA,sB} c[member_index(sA,sB)] |alpha; sA sB>.
inline StateVector logical_state(const LogicalBlock& block, const Lattice& lat, std::span<const Complex, 4> amplitudes) {
  double n2 = 0;
  for (const Complex& c : amplitudes) n2 += std::norm(c);
  if (std::abs(n2 - 1.0) > 1e-12) throw std::invalid_argument("logical amplitudes must be normalized");
  StateVector psi(state_dimension(lat), Complex{0, 0});
  for (int k = 0; k < 4; ++k) psi[block.members[k].index()] += amplitudes[k];
  return psi;
}

inline StateVector logical_state(const LogicalBlock& block, const Lattice& lat, std::array<Complex, 4> amplitudes) {
  return logical_state(block, lat, std::span<const Complex, 4>(amplitudes));
}

/// Logical readout. Index 0 of the per-qubit arrays is the A qubit.
struct Tomography {
  std::array<double, 2> x{};
  std::array<double, 2> y{};
  std::array<double, 2> z{};
  double zz = 0;  // Z_A Z_B
  double xx = 0;  // X_A X_B
  double yy = 0;  // Y_A Y_B
  double xz = 0;  // X_A Z_B
  double population = 0;
};

inline Tomography logical_tomography(std::span<const Complex> state, const LogicalOperators& ops) {
  auto ev = [&](const SparseOperator& op) { return op.expectation(state).real(); };
  Tomography t;
  for (int q = 0; q < 2; ++q) {
    const Sublattice s = q == 0 ? Sublattice::A : Sublattice::B;
    t.x[q] = ev(ops.get(s, LogicalKind::X));
    t.y[q] = ev(ops.get(s, LogicalKind::Y));
    t.z[q] = ev(ops.get(s, LogicalKind::Z));
  }
  using K = LogicalKind;
  t.zz = ev(ops.get(Sublattice::A, K::Z) * ops.get(Sublattice::B, K::Z));
  t.xx = ev(ops.get(Sublattice::A, K::X) * ops.get(Sublattice::B, K::X));
  t.yy = ev(ops.get(Sublattice::A, K::Y) * ops.get(Sublattice::B, K::Y));
  t.xz = ev(ops.get(Sublattice::A, K::X) * ops.get(Sublattice::B, K::Z));
  t.population = ev(ops.get(Sublattice::A, K::I));
  return t;
}

inline Tomography logical_tomography(std::span<const Complex> state, const LogicalBlock& block, const Lattice& lat) {
  return logical_tomography(state, logical_operators(block, lat));
}

}  // namespace fragmenta

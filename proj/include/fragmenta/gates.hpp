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

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fragmenta/config.hpp"
#include "fragmenta/encoding.hpp"
#include "fragmenta/lattice.hpp"
#include "fragmenta/linalg.hpp"

namespace fragmenta {

/// prod_{j in s} exp(-i theta/2 X_j), applied one site at a time by pairing
/// amplitudes that differ in bit j.
inline StateVector apply_rx(StateVector state, const Lattice& lat, Sublattice s, double theta) {
  if (state.size() != state_dimension(lat)) throw std::invalid_argument("state dimension does not match lattice");
  const double c = std::cos(theta / 2);
  const Complex ms{0, -std::sin(theta / 2)};
  for (int j : lat.sites_of(s)) {
    const std::size_t bit = std::size_t{1} << j;
    parallel_for(state.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        if (k & bit) continue;
        const Complex a0 = state[k];
        const Complex a1 = state[k | bit];
        state[k] = c * a0 + ms * a1;
        state[k | bit] = ms * a0 + c * a1;
      }
    });
  }
  return state;
}

/// prod_{j in s} exp[-i (-1)^{sigma_j} phi/(2 N_s) Z_j], with sigma the
/// block's reference configuration. Diagonal, so applied as one phase per
/// basis state.
inline StateVector apply_rz(StateVector state, const LogicalBlock& block, const Lattice& lat, Sublattice s, double phi) {
  if (state.size() != state_dimension(lat)) throw std::invalid_argument("state dimension does not match lattice");
  const std::uint64_t mask = lat.sublattice_mask(s);
  const int ns = lat.sites_per_sublattice();
  const std::uint64_t ref = block.alpha.bits();
  parallel_for(state.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      // sum_j (-1)^{sigma_j} (-1)^{k_j} = N_s - 2 * (number of sites where k differs from sigma)
      const int differ = std::popcount((k ^ ref) & mask);
      const double exponent = -phi / (2.0 * ns) * (ns - 2 * differ);
      state[k] *= std::polar(1.0, exponent);
    }
  });
  return state;
}

/// prod_{i in A} X_i^{sigma_i} CNOT_{i -> n(i)} X_i^{sigma_i}. Controls are all
/// on A and targets all on B, so the factors commute and the product is the
/// basis permutation k -> k ^ (targets of every A-site whose bit differs from
/// sigma).
inline StateVector apply_logical_cnot(const StateVector& state, const LogicalBlock& block, const Lattice& lat) {
  if (state.size() != state_dimension(lat)) throw std::invalid_argument("state dimension does not match lattice");
  const auto a_sites = lat.sites_of(Sublattice::A);
  std::vector<std::uint64_t> target_bit(a_sites.size());
  for (std::size_t k = 0; k < a_sites.size(); ++k) target_bit[k] = std::uint64_t{1} << lat.cnot_partner(a_sites[k]);
  const std::uint64_t ref = block.alpha.bits();
  StateVector out(state.size());
  parallel_for(state.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      std::uint64_t flips = 0;
      for (std::size_t a = 0; a < a_sites.size(); ++a) {
        if (((k ^ ref) >> a_sites[a]) & 1U) flips |= target_bit[a];
      }
      out[k ^ flips] = state[k];
    }
  });
  return out;
}

inline std::array<Complex, 4> block_amplitudes(std::span<const Complex> state, const LogicalBlock& block) {
  std::array<Complex, 4> c{};
  for (int k = 0; k < 4; ++k) c[k] = state[block.members[k].index()];
  return c;
}

/// Ideal two-qubit logical matrices in member_index order (A is the high bit).
namespace logical {

inline Eigen::Matrix2cd rx(double theta) {
  Eigen::Matrix2cd m;
  const Complex c = std::cos(theta / 2), s{0, -std::sin(theta / 2)};
  m << c, s, s, c;
  return m;
}

inline Eigen::Matrix2cd rz(double phi) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, -phi / 2);
  m(1, 1) = std::polar(1.0, phi / 2);
  return m;
}

inline Eigen::Matrix4cd on_qubit(Sublattice s, const Eigen::Matrix2cd& u) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd& first = s == Sublattice::A ? u : id;
  const Eigen::Matrix2cd& second = s == Sublattice::A ? id : u;
  Eigen::Matrix4cd out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(r, c) = first(r / 2, c / 2) * second(r % 2, c % 2);
  }
  return out;
}

inline Eigen::Matrix4cd cnot_a_to_b() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(member_index(0, 0), member_index(0, 0)) = 1;
  m(member_index(0, 1), member_index(0, 1)) = 1;
  m(member_index(1, 1), member_index(1, 0)) = 1;
  m(member_index(1, 0), member_index(1, 1)) = 1;
  return m;
}

}  // namespace logical

/// Applies a 4x4 logical matrix to the in-block amplitudes; the result is
/// supported on the block only.
inline StateVector apply_logical_matrix(std::span<const Complex> state, const LogicalBlock& block, const Eigen::Matrix4cd& u) {
  const auto c = block_amplitudes(state, block);
  Eigen::Vector4cd v(c[0], c[1], c[2], c[3]);
  const Eigen::Vector4cd w = u * v;
  StateVector out(state.size(), Complex{0, 0});
  for (int k = 0; k < 4; ++k) out[block.members[k].index()] = w(k);
  return out;
}

struct GateReport {
  std::string gate;
  std::vector<std::pair<std::string, double>> params;
  std::string input;
  Tomography before;
  Tomography after;
  double population = 0;
  double leakage = 0;
  double fidelity = 0;            // |<expected|out>|^2
  Complex global_phase{1, 0};     // <expected|out> / |<expected|out>|
};

inline GateReport gate_report(std::string gate, std::vector<std::pair<std::string, double>> params, std::string input,
                              std::span<const Complex> in, std::span<const Complex> out,
                              std::span<const Complex> expected, const LogicalOperators& ops) {
  GateReport r;
  r.gate = std::move(gate);
  r.params = std::move(params);
  r.input = std::move(input);
  r.before = logical_tomography(in, ops);
  r.after = logical_tomography(out, ops);
  r.population = r.after.population;
  r.leakage = 1.0 - r.population;
  const Complex overlap = inner(expected, out);
  r.fidelity = std::norm(overlap);
  if (std::abs(overlap) > 0) r.global_phase = overlap / std::abs(overlap);
  return r;
}

/// Closed-form in-block population after R_x(theta) on a logical basis state:
/// only "no site flipped" and "every site flipped" stay in the block.
inline double rx_population_closed_form(double theta, int sites_per_sublattice) {
  return std::pow(std::cos(theta / 2), 2 * sites_per_sublattice) + std::pow(std::sin(theta / 2), 2 * sites_per_sublattice);
}

}  // namespace fragmenta

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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "fragmenta/lattice.hpp"

namespace fragmenta {

/// Largest lattice (in sites) for which dense state vectors are built.
inline constexpr int kMaxStateSites = 16;

/// Dimension 2^{L^2} of the dense state space; rejects lattices above the cap.
inline std::size_t state_dimension(const Lattice& lat) {
  if (lat.num_sites() > kMaxStateSites) {
    throw std::length_error("dense state vectors limited to " + std::to_string(kMaxStateSites) + " sites, lattice has " +
                            std::to_string(lat.num_sites()));
  }
  return std::size_t{1} << lat.num_sites();
}

/// A z-basis product state of the L*L qubits, one bit per site (bit k = 1
/// means site k is in |1>). The packed word doubles as the amplitude index of
/// the basis state in a dense state vector.
class SpinConfig {
 public:
  SpinConfig() = default;
  SpinConfig(std::uint64_t bits, int L) : bits_(bits), L_(L) {
    if (L <= 0 || L > kMaxPackedL) throw std::invalid_argument("unsupported lattice size for SpinConfig");
    const int n = L * L;
    if (n < 64 && (bits >> n) != 0) throw std::invalid_argument("configuration has bits beyond the lattice");
  }
  static SpinConfig zeros(const Lattice& lat) { return SpinConfig(0, lat.size()); }

  std::uint64_t bits() const { return bits_; }
  std::size_t index() const { return static_cast<std::size_t>(bits_); }
  int lattice_size() const { return L_; }
  bool get(int i) const { return (bits_ >> i) & 1U; }
  int popcount() const { return std::popcount(bits_); }

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;
  friend auto operator<=>(const SpinConfig& a, const SpinConfig& b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
  int L_ = 0;
};

/// Branch-free neighbor shifts of a packed configuration. east(c) has at site
/// (x,y) the bit of (x+1,y); north(c) the bit of (x,y+1); and so on.
class PackedShifts {
 public:
  explicit PackedShifts(const Lattice& lat) : L_(lat.size()), n_(lat.num_sites()), all_(lat.all_mask()) {
    for (int y = 0; y < L_; ++y) {
      first_col_ |= std::uint64_t{1} << (y * L_);
      last_col_ |= std::uint64_t{1} << (y * L_ + L_ - 1);
    }
  }

  std::uint64_t east(std::uint64_t c) const { return ((c >> 1) & ~last_col_) | ((c << (L_ - 1)) & last_col_); }
  std::uint64_t west(std::uint64_t c) const { return ((c << 1) & ~first_col_) | ((c >> (L_ - 1)) & first_col_); }
  std::uint64_t north(std::uint64_t c) const { return ((c >> L_) | (c << (n_ - L_))) & all_; }
  std::uint64_t south(std::uint64_t c) const { return ((c << L_) | (c >> (n_ - L_))) & all_; }

  /// Sites whose four neighbors agree (legal moves of the constrained model).
  std::uint64_t flippable(std::uint64_t c) const {
    const std::uint64_t e = east(c), w = west(c), n = north(c), s = south(c);
    return ((e & w & n & s) | ~(e | w | n | s)) & all_;
  }

  /// Plaquettes (indexed by lower-left corner) whose CZ eigenvalue is -1.
  std::uint64_t intersections(std::uint64_t c) const {
    const std::uint64_t e = east(c), n = north(c), ne = east(n);
    return (c ^ ne) & (e ^ n) & all_;
  }

  /// Plaquettes whose stabilizer -Z Z Z Z evaluates to -1 (even corner parity).
  std::uint64_t stabilizer_defects(std::uint64_t c) const {
    const std::uint64_t e = east(c), n = north(c), ne = east(n);
    return ~(c ^ e ^ n ^ ne) & all_;
  }

  std::uint64_t all() const { return all_; }

 private:
  int L_;
  int n_;
  std::uint64_t all_;
  std::uint64_t first_col_ = 0;
  std::uint64_t last_col_ = 0;
};

/// CZ_p eigenvalue by counting plaquette edges whose endpoints are both 1.
inline int cz_plaquette(const SpinConfig& cfg, const Lattice& lat, int p) {
  const auto corners = lat.plaquette(p);
  int both_one = 0;
  for (int k = 0; k < 4; ++k) both_one += cfg.get(corners[k]) && cfg.get(corners[(k + 1) % 4]);
  return both_one % 2 == 0 ? 1 : -1;
}

/// Same eigenvalue via (-1)^{(a1 ^ a2)(b1 ^ b2)} on the diagonal corner pairs.
inline int cz_plaquette_closed_form(const SpinConfig& cfg, const Lattice& lat, int p) {
  const auto c = lat.plaquette(p);
  const bool first = cfg.get(c[0]) != cfg.get(c[2]);
  const bool second = cfg.get(c[1]) != cfg.get(c[3]);
  return first && second ? -1 : 1;
}

inline int intersection_count(const SpinConfig& cfg, const Lattice& lat) {
  return std::popcount(PackedShifts(lat).intersections(cfg.bits()));
}

inline bool is_flippable(const SpinConfig& cfg, const Lattice& lat, int i) {
  const auto nb = lat.neighbors(i);
  const bool first = cfg.get(nb[0]);
  return cfg.get(nb[1]) == first && cfg.get(nb[2]) == first && cfg.get(nb[3]) == first;
}

inline bool is_frozen(const SpinConfig& cfg, const Lattice& lat) {
  return PackedShifts(lat).flippable(cfg.bits()) == 0;
}

/// Member of the code manifold: frozen and free of loop intersections.
inline bool is_code_state(const SpinConfig& cfg, const Lattice& lat) {
  const PackedShifts shifts(lat);
  return shifts.flippable(cfg.bits()) == 0 && shifts.intersections(cfg.bits()) == 0;
}

struct DomainWalls {
  bool a = false;
  bool b = false;
  friend bool operator==(const DomainWalls&, const DomainWalls&) = default;
};

inline DomainWalls domain_walls(const SpinConfig& cfg, const Lattice& lat, int p) {
  const auto c = lat.plaquette(p);
  const bool even_pair = cfg.get(c[0]) != cfg.get(c[2]);
  const bool odd_pair = cfg.get(c[1]) != cfg.get(c[3]);
  if (lat.sublattice(c[0]) == Sublattice::A) return {even_pair, odd_pair};
  return {odd_pair, even_pair};
}

/// Z_p = -prod Z_i over the plaquette; +1 exactly when one domain wall crosses.
inline int stabilizer_zp(const SpinConfig& cfg, const Lattice& lat, int p) {
  int ones = 0;
  for (int corner : lat.plaquette(p)) ones += cfg.get(corner);
  return ones % 2 == 0 ? -1 : 1;
}

inline SpinConfig apply_flip(const SpinConfig& cfg, int i) {
  return SpinConfig(cfg.bits() ^ (std::uint64_t{1} << i), cfg.lattice_size());
}

/// X_A or X_B: toggles every site of a sublattice.
inline SpinConfig toggle(const SpinConfig& cfg, const Lattice& lat, Sublattice s) {
  return SpinConfig(cfg.bits() ^ lat.sublattice_mask(s), cfg.lattice_size());
}

/// Text literal: L on the first line, then L rows of '0'/'1', row y on line y.
inline SpinConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  int L = 0;
  if (!(in >> L)) throw std::invalid_argument("config literal must start with the lattice size");
  if (L <= 0 || L > kMaxPackedL) throw std::invalid_argument("config literal has unsupported size");
  std::uint64_t bits = 0;
  for (int y = 0; y < L; ++y) {
    std::string row;
    if (!(in >> row) || static_cast<int>(row.size()) != L) {
      throw std::invalid_argument("config literal row " + std::to_string(y) + " must have " + std::to_string(L) +
                                  " characters");
    }
    for (int x = 0; x < L; ++x) {
      if (row[x] == '1') {
        bits |= std::uint64_t{1} << (y * L + x);
      } else if (row[x] != '0') {
        throw std::invalid_argument("config literal may only contain '0' and '1'");
      }
    }
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("trailing characters in config literal");
  return SpinConfig(bits, L);
}

inline std::string format_config(const SpinConfig& cfg) {
  const int L = cfg.lattice_size();
  std::string out = std::to_string(L) + "\n";
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) out += cfg.get(y * L + x) ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace fragmenta

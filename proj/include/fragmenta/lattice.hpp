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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fragmenta {

enum class Sublattice : std::uint8_t { A, B };

inline char to_char(Sublattice s) { return s == Sublattice::A ? 'A' : 'B'; }

inline Sublattice other(Sublattice s) { return s == Sublattice::A ? Sublattice::B : Sublattice::A; }

/// Largest lattice whose configurations fit in one packed 64-bit word.
inline constexpr int kMaxPackedL = 8;

/// Geometry of the L x L square-lattice torus.
///
/// Sites are indexed row-major (site = y * L + x), so bit k of a packed
/// configuration is site k. Site (x, y) is on sublattice A when x + y is even.
/// Plaquette p is identified with its lower-left corner site; its corners are
/// stored in cyclic order (x,y), (x+1,y), (x+1,y+1), (x,y+1). Rows are counted
/// from y = 0, and an "odd row" is one with y % 2 == 1.
class Lattice {
 public:
  explicit Lattice(int L) : L_(L) {
    if (L < 4) throw std::invalid_argument("lattice size must be at least 4, got " + std::to_string(L));
    if (L % 2 != 0) throw std::invalid_argument("lattice size must be even, got " + std::to_string(L));
    if (L > kMaxPackedL) {
      throw std::invalid_argument("lattice size " + std::to_string(L) + " exceeds packed width (L <= " +
                                  std::to_string(kMaxPackedL) + ")");
    }
    const int n = L * L;
    neighbors_.resize(n);
    plaquettes_.resize(n);
    plaquettes_of_.resize(n);
    std::vector<int> fill(n, 0);
    for (int y = 0; y < L; ++y) {
      for (int x = 0; x < L; ++x) {
        const int i = site(x, y);
        neighbors_[i] = {site(x + 1, y), site(x - 1, y), site(x, y + 1), site(x, y - 1)};
        plaquettes_[i] = {site(x, y), site(x + 1, y), site(x + 1, y + 1), site(x, y + 1)};
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (sublattice(i) == Sublattice::A) {
          mask_a_ |= bit;
        } else {
          mask_b_ |= bit;
        }
      }
    }
    for (int p = 0; p < n; ++p) {
      for (int corner : plaquettes_[p]) plaquettes_of_[corner][fill[corner]++] = p;
    }
    for (int y = 0; y < L; ++y) row_masks_.push_back(((std::uint64_t{1} << L) - 1) << (y * L));
  }

  int size() const { return L_; }
  int num_sites() const { return L_ * L_; }
  int num_plaquettes() const { return L_ * L_; }
  int sites_per_sublattice() const { return L_ * L_ / 2; }

  /// Site index with periodic wraparound in both directions.
  int site(int x, int y) const { return wrap(y) * L_ + wrap(x); }
  int x_of(int i) const { return i % L_; }
  int y_of(int i) const { return i / L_; }

  Sublattice sublattice(int i) const { return (x_of(i) + y_of(i)) % 2 == 0 ? Sublattice::A : Sublattice::B; }

  /// Neighbors in the order (x+1,y), (x-1,y), (x,y+1), (x,y-1).
  std::span<const int, 4> neighbors(int i) const { return neighbors_.at(i); }
  std::span<const int, 4> plaquette(int p) const { return plaquettes_.at(p); }
  std::span<const int, 4> plaquettes_of(int i) const { return plaquettes_of_.at(i); }

  std::uint64_t all_mask() const { return mask_a_ | mask_b_; }
  std::uint64_t sublattice_mask(Sublattice s) const { return s == Sublattice::A ? mask_a_ : mask_b_; }
  std::uint64_t row_mask(int y) const { return row_masks_.at(y); }

  std::vector<int> sites_of(Sublattice s) const {
    std::vector<int> out;
    for (int i = 0; i < num_sites(); ++i) {
      if (sublattice(i) == s) out.push_back(i);
    }
    return out;
  }

  /// Target of the transversal CNOT for A-site i: the right neighbor in odd
  /// rows and the left neighbor in even rows.
  int cnot_partner(int i) const {
    if (i < 0 || i >= num_sites()) throw std::out_of_range("site index out of range");
    if (sublattice(i) != Sublattice::A) {
      throw std::invalid_argument("cnot_partner expects an A-sublattice site, got " + std::to_string(i));
    }
    const int x = x_of(i);
    const int y = y_of(i);
    return y % 2 == 1 ? site(x + 1, y) : site(x - 1, y);
  }

 private:
  int wrap(int v) const { return ((v % L_) + L_) % L_; }

  int L_;
  std::vector<std::array<int, 4>> neighbors_;
  std::vector<std::array<int, 4>> plaquettes_;
  std::vector<std::array<int, 4>> plaquettes_of_;
  std::vector<std::uint64_t> row_masks_;
  std::uint64_t mask_a_ = 0;
  std::uint64_t mask_b_ = 0;
};

inline Lattice build_lattice(int L) { return Lattice(L); }

}  // namespace fragmenta

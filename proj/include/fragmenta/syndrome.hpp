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
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fragmenta/config.hpp"
#include "fragmenta/encoding.hpp"
#include "fragmenta/lattice.hpp"
#include "fragmenta/linalg.hpp"

namespace fragmenta {

enum class Pauli { X, Y, Z };

inline char to_char(Pauli p) { return "XYZ"[static_cast<int>(p)]; }

inline Pauli parse_pauli(const std::string& s) {
  if (s == "X" || s == "x") return Pauli::X;
  if (s == "Y" || s == "y") return Pauli::Y;
  if (s == "Z" || s == "z") return Pauli::Z;
  throw std::invalid_argument("unknown Pauli '" + s + "'");
}

/// Z_p sign per plaquette for a basis configuration.
inline std::vector<int> extract_syndrome(const SpinConfig& cfg, const Lattice& lat) {
  const std::uint64_t defects = PackedShifts(lat).stabilizer_defects(cfg.bits());
  std::vector<int> out(lat.num_plaquettes());
  for (int p = 0; p < lat.num_plaquettes(); ++p) out[p] = (defects >> p) & 1U ? -1 : 1;
  return out;
}

struct SyndromeReading {
  bool mixed = false;              // support carries more than one syndrome pattern
  std::vector<int> signs;          // valid when !mixed
  std::vector<double> expectations;  // <Z_p> per plaquette

  int defects() const {
    int n = 0;
    for (int s : signs) n += s < 0;
    return n;
  }
};

/// Deterministic readout. When every basis state in the support shares one
/// pattern, that pattern is the measurement outcome; otherwise the reading is
/// flagged as mixed and only expectations are meaningful.
inline SyndromeReading extract_syndrome(std::span<const Complex> state, const Lattice& lat, double support_tol = 1e-14) {
  if (state.size() != state_dimension(lat)) throw std::invalid_argument("state dimension does not match lattice");
  const PackedShifts shifts(lat);
  const int np = lat.num_plaquettes();
  SyndromeReading r;
  r.expectations.assign(np, 0.0);
  bool have = false;
  std::uint64_t pattern = 0;
  double weight = 0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double w = std::norm(state[k]);
    if (w <= support_tol * support_tol) continue;
    const std::uint64_t d = shifts.stabilizer_defects(k);
    if (!have) {
      pattern = d;
      have = true;
    } else if (d != pattern) {
      r.mixed = true;
    }
    weight += w;
    for (int p = 0; p < np; ++p) r.expectations[p] += (d >> p) & 1U ? -w : w;
  }
  if (weight > 0) {
    for (double& e : r.expectations) e /= weight;
  }
  if (!r.mixed && have) {
    r.signs.resize(np);
    for (int p = 0; p < np; ++p) r.signs[p] = (pattern >> p) & 1U ? -1 : 1;
  }
  return r;
}

/// Single-site Pauli on a dense state; Y = i X Z.
inline StateVector inject_pauli(StateVector state, int site, Pauli p) {
  const std::size_t bit = std::size_t{1} << site;
  if (bit >= state.size()) throw std::out_of_range("site outside the state space");
  if (p == Pauli::Z || p == Pauli::Y) {
    for (std::size_t k = 0; k < state.size(); ++k) {
      if (k & bit) state[k] = -state[k];
    }
  }
  if (p == Pauli::X || p == Pauli::Y) {
    for (std::size_t k = 0; k < state.size(); ++k) {
      if (!(k & bit)) std::swap(state[k], state[k | bit]);
    }
  }
  if (p == Pauli::Y) {
    for (Complex& a : state) a *= Complex{0, 1};
  }
  return state;
}

struct DetectionReport {
  int site = 0;
  Sublattice sublattice = Sublattice::A;
  Pauli pauli = Pauli::X;
  bool mixed = false;
  int defects = 0;
  double x_a_before = 0;
  Tomography after;

  bool detected() const { return defects > 0; }
  /// Logical X_A eigenvalue flipped sign without any syndrome defect.
  bool silent_logical_flip() const { return defects == 0 && x_a_before * after.x[0] < 0; }
};

/// Prepares (|alpha;00> + |alpha;10>)/sqrt(2), applies one Pauli error, and
/// reads out the syndrome and the logical state.
inline DetectionReport detection_experiment(const LogicalBlock& block, const Lattice& lat, const LogicalOperators& ops,
                                            int site, Pauli p) {
  if (site < 0 || site >= lat.num_sites()) throw std::out_of_range("site index out of range");
  const double h = 1.0 / std::sqrt(2.0);
  std::array<Complex, 4> amps{};
  amps[member_index(0, 0)] = h;
  amps[member_index(1, 0)] = h;
  const StateVector psi = logical_state(block, lat, amps);
  const StateVector err = inject_pauli(psi, site, p);
  const SyndromeReading s = extract_syndrome(err, lat);
  DetectionReport r;
  r.site = site;
  r.sublattice = lat.sublattice(site);
  r.pauli = p;
  r.mixed = s.mixed;
  r.defects = s.mixed ? -1 : s.defects();
  r.x_a_before = logical_tomography(psi, ops).x[0];
  r.after = logical_tomography(err, ops);
  return r;
}

inline DetectionReport detection_experiment(const LogicalBlock& block, const Lattice& lat, int site, Pauli p) {
  return detection_experiment(block, lat, logical_operators(block, lat), site, p);
}

}  // namespace fragmenta

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
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fragmenta/linalg.hpp"
#include "fragmenta/parallel.hpp"

namespace fragmenta::quadflip {

/// m-state clock variables on the 2L^2 links of an L x L torus.
///
/// Link h(x,y) runs from vertex (x,y) to (x+1,y) and has index y*L + x;
/// link v(x,y) runs from (x,y) to (x,y+1) and has index L^2 + y*L + x.
///
/// Two loop families are tabulated. Plaquette p = y*L + x is bounded by
/// h(x,y), v(x+1,y), h(x,y+1), v(x,y); quad-flip moves recolor these. The
/// flux loops are the elementary loops of the dual lattice: loop v = y*L + x
/// encircles vertex (x,y) and crosses h(x,y), v(x,y), h(x-1,y), v(x,y-1) in
/// that path order with signs +, -, +, -. Zero flux on every such loop
/// forbids two different colors from crossing at a vertex, and a move flips
/// two path-adjacent links of each corner loop, so validity is conserved.
class ClockLattice {
 public:
  explicit ClockLattice(int L) : L_(L) {
    if (L < 2 || L > 3) throw std::invalid_argument("quad-flip lattice supports 2 <= L <= 3, got " + std::to_string(L));
    for (int y = 0; y < L; ++y) {
      for (int x = 0; x < L; ++x) {
        plaquettes_.push_back({h(x, y), v(x + 1, y), h(x, y + 1), v(x, y)});
        flux_loops_.push_back({h(x, y), v(x, y), h(x - 1, y), v(x, y - 1)});
      }
    }
  }

  int size() const { return L_; }
  int num_links() const { return 2 * L_ * L_; }
  int num_plaquettes() const { return L_ * L_; }
  int num_flux_loops() const { return L_ * L_; }

  int h(int x, int y) const { return wrap(y) * L_ + wrap(x); }
  int v(int x, int y) const { return L_ * L_ + wrap(y) * L_ + wrap(x); }

  const std::array<int, 4>& plaquette(int p) const { return plaquettes_.at(p); }
  const std::array<int, 4>& flux_loop(int l) const { return flux_loops_.at(l); }

 private:
  int wrap(int a) const { return ((a % L_) + L_) % L_; }

  int L_;
  std::vector<std::array<int, 4>> plaquettes_;
  std::vector<std::array<int, 4>> flux_loops_;
};

/// One digit in [0, m) per link.
struct ClockConfig {
  std::vector<std::uint8_t> digits;
  int m = 3;

  /// Base-m integer with link 0 as the least significant digit.
  std::uint64_t code() const {
    std::uint64_t c = 0;
    for (std::size_t k = digits.size(); k-- > 0;) c = c * static_cast<std::uint64_t>(m) + digits[k];
    return c;
  }

  static ClockConfig from_code(std::uint64_t code, int links, int m) {
    ClockConfig cfg{std::vector<std::uint8_t>(links), m};
    for (int k = 0; k < links; ++k) {
      cfg.digits[k] = static_cast<std::uint8_t>(code % m);
      code /= m;
    }
    return cfg;
  }

  static ClockConfig uniform(const ClockLattice& lat, int m, int color) {
    return {std::vector<std::uint8_t>(lat.num_links(), static_cast<std::uint8_t>(color)), m};
  }

  friend bool operator==(const ClockConfig&, const ClockConfig&) = default;
};

/// sum over the loop's path-ordered links of (-1)^position [digit == kappa].
inline int flux_density(const ClockConfig& cfg, const ClockLattice& lat, int loop, int kappa) {
  const auto& links = lat.flux_loop(loop);
  int flux = 0;
  for (int j = 0; j < 4; ++j) flux += (cfg.digits[links[j]] == kappa) ? (j % 2 == 0 ? 1 : -1) : 0;
  return flux;
}

inline bool is_valid(const ClockConfig& cfg, const ClockLattice& lat) {
  for (int l = 0; l < lat.num_flux_loops(); ++l) {
    for (int kappa = 0; kappa < cfg.m; ++kappa) {
      if (flux_density(cfg, lat, l, kappa) != 0) return false;
    }
  }
  return true;
}

struct Move {
  int plaquette;
  int from;
  int to;
  friend bool operator==(const Move&, const Move&) = default;
};

/// One move per monochromatic plaquette and target color.
inline std::vector<Move> legal_moves(const ClockConfig& cfg, const ClockLattice& lat) {
  std::vector<Move> out;
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    const auto& links = lat.plaquette(p);
    const int color = cfg.digits[links[0]];
    if (!std::all_of(links.begin(), links.end(), [&](int l) { return cfg.digits[l] == color; })) continue;
    for (int target = 0; target < cfg.m; ++target) {
      if (target != color) out.push_back({p, color, target});
    }
  }
  return out;
}

inline ClockConfig apply_move(ClockConfig cfg, const ClockLattice& lat, const Move& mv) {
  for (int l : lat.plaquette(mv.plaquette)) {
    if (cfg.digits[l] != mv.from) throw std::invalid_argument("move does not match the plaquette colors");
    cfg.digits[l] = static_cast<std::uint8_t>(mv.to);
  }
  return cfg;
}

/// Global Z_m clock shift: every digit d -> d + k mod m.
inline ClockConfig global_shift(ClockConfig cfg, int k) {
  const int m = cfg.m;
  for (auto& d : cfg.digits) d = static_cast<std::uint8_t>(((d + k) % m + m) % m);
  return cfg;
}

inline bool is_prime(int m) {
  if (m < 2) return false;
  for (int d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

struct Sector {
  std::vector<std::uint32_t> members;  // indices into valid, ascending; members[0] is the representative
};

struct Decomposition {
  int L = 0;
  int m = 0;
  std::vector<ClockConfig> valid;  // sorted by code
  std::unordered_map<std::uint64_t, std::uint32_t> index_of;
  std::vector<Sector> sectors;  // sorted by representative
  std::vector<std::uint32_t> sector_of;

  std::uint32_t index(const ClockConfig& cfg) const {
    const auto it = index_of.find(cfg.code());
    if (it == index_of.end()) throw std::invalid_argument("configuration is not a valid state");
    return it->second;
  }
};

inline constexpr std::uint64_t kMaxRawConfigs = std::uint64_t{1} << 27;

/// Exhaustive scan of all m^{2L^2} link assignments, then connected
/// components of the quad-flip move graph on the valid ones.
inline Decomposition krylov_decompose_quadflip(const ClockLattice& lat, int m) {
  if (m < 2 || m > 5) throw std::invalid_argument("quad-flip clock size must satisfy 2 <= m <= 5");
  const int links = lat.num_links();
  std::uint64_t raw = 1;
  for (int k = 0; k < links; ++k) {
    raw *= static_cast<std::uint64_t>(m);
    if (raw > kMaxRawConfigs) throw std::length_error("quad-flip raw configuration space exceeds the enumeration cap");
  }
  Decomposition d;
  d.L = lat.size();
  d.m = m;
  const unsigned workers = std::max(1U, worker_count());
  std::vector<std::vector<std::uint64_t>> found(workers);
  const std::uint64_t stripe = (raw + workers - 1) / workers;
  parallel_for(
      workers,
      [&](std::size_t wb, std::size_t we) {
        for (std::size_t w = wb; w < we; ++w) {
          const std::uint64_t end = std::min(raw, (w + 1) * stripe);
          for (std::uint64_t c = w * stripe; c < end; ++c) {
            if (is_valid(ClockConfig::from_code(c, links, m), lat)) found[w].push_back(c);
          }
        }
      },
      1);
  for (const auto& part : found) {
    for (std::uint64_t c : part) {
      d.index_of.emplace(c, static_cast<std::uint32_t>(d.valid.size()));
      d.valid.push_back(ClockConfig::from_code(c, links, m));
    }
  }

  const std::size_t n = d.valid.size();
  d.sector_of.assign(n, UINT32_MAX);
  for (std::size_t s = 0; s < n; ++s) {
    if (d.sector_of[s] != UINT32_MAX) continue;
    // seeds are visited in code order, so each sector's first seed is its minimum
    const auto id = static_cast<std::uint32_t>(d.sectors.size());
    Sector sector;
    std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(s)};
    d.sector_of[s] = id;
    while (!frontier.empty()) {
      const std::uint32_t cur = frontier.back();
      frontier.pop_back();
      sector.members.push_back(cur);
      for (const Move& mv : legal_moves(d.valid[cur], lat)) {
        const auto it = d.index_of.find(apply_move(d.valid[cur], lat, mv).code());
        if (it == d.index_of.end()) throw std::logic_error("quad-flip move produced an invalid configuration");
        if (d.sector_of[it->second] == UINT32_MAX) {
          d.sector_of[it->second] = id;
          frontier.push_back(it->second);
        }
      }
    }
    std::sort(sector.members.begin(), sector.members.end());
    d.sectors.push_back(std::move(sector));
  }
  return d;
}

/// Orbit of a sector under the global shift, in shift order: sectors[k] is
/// the base sector shifted by +k. The projector P^(k) is the projector onto
/// sectors[k].
struct QuditMultiplet {
  std::vector<std::uint32_t> sectors;
  std::size_t size() const { return sectors.size(); }
};

struct MultipletAnalysis {
  std::vector<QuditMultiplet> multiplets;
  std::vector<std::uint32_t> symmetric_sectors;
  std::map<std::size_t, std::size_t> orbit_size_counts;
};

inline std::uint32_t shifted_sector(const Decomposition& d, std::uint32_t sector, int k) {
  const ClockConfig& rep = d.valid[d.sectors[sector].members.front()];
  return d.sector_of[d.index(global_shift(rep, k))];
}

/// Groups sectors into global-shift orbits. For prime m an orbit must have
/// size 1 or m; for composite m its size must divide m.
inline MultipletAnalysis find_multiplets(const Decomposition& d) {
  MultipletAnalysis out;
  std::vector<char> seen(d.sectors.size(), 0);
  for (std::uint32_t s = 0; s < d.sectors.size(); ++s) {
    if (seen[s]) continue;
    QuditMultiplet orbit;
    for (int k = 0; k < d.m; ++k) {
      const std::uint32_t t = shifted_sector(d, s, k);
      if (std::find(orbit.sectors.begin(), orbit.sectors.end(), t) != orbit.sectors.end()) break;
      orbit.sectors.push_back(t);
    }
    for (std::uint32_t t : orbit.sectors) seen[t] = 1;
    const std::size_t n = orbit.size();
    const bool allowed = is_prime(d.m) ? (n == 1 || n == static_cast<std::size_t>(d.m)) : (d.m % n == 0);
    if (!allowed) {
      std::ostringstream msg;
      msg << "sector orbit of size " << n << " is not allowed for m = " << d.m << "; sectors:";
      for (std::uint32_t t : orbit.sectors) msg << ' ' << t << "(size " << d.sectors[t].members.size() << ')';
      throw std::logic_error(msg.str());
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (d.sectors[orbit.sectors[k]].members.size() != d.sectors[s].members.size()) {
        throw std::logic_error("shift-related sectors differ in size");
      }
    }
    ++out.orbit_size_counts[n];
    if (n == 1) {
      out.symmetric_sectors.push_back(s);
    } else {
      out.multiplets.push_back(std::move(orbit));
    }
  }
  return out;
}

/// Logical qudit operators on the span of valid configurations:
/// I = sum_k P^(k), Z = sum_k w^k P^(k), X = sum_k P^(k) X with w = e^{2 pi i/n}.
struct QuditLogicals {
  int n = 0;
  SparseOperator I;
  SparseOperator Z;
  SparseOperator X;
};

inline QuditLogicals qudit_logicals(const Decomposition& d, const QuditMultiplet& mp) {
  const std::size_t dim = d.valid.size();
  const int n = static_cast<int>(mp.size());
  std::vector<SparseOperator::Entry> ie, ze, xe;
  for (int k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, 2 * std::numbers::pi * k / n);
    for (std::uint32_t idx : d.sectors[mp.sectors[k]].members) {
      ie.push_back({idx, idx, 1.0});
      ze.push_back({idx, idx, phase});
      const std::uint32_t target = d.index(global_shift(d.valid[idx], 1));
      if (d.sector_of[target] != mp.sectors[(k + 1) % n]) {
        throw std::logic_error("global shift does not map multiplet sector k onto sector k+1");
      }
      xe.push_back({target, idx, 1.0});
    }
  }
  return {n, SparseOperator::from_entries(dim, std::move(ie), true), SparseOperator::from_entries(dim, std::move(ze)),
          SparseOperator::from_entries(dim, std::move(xe))};
}

struct QuditResiduals {
  double z_power = 0;    // ||Z^n - I||
  double x_power = 0;    // ||X^n - I||
  double braiding = 0;   // ||Z X - w X Z||
  double max() const { return std::max({z_power, x_power, braiding}); }
};

inline QuditResiduals verify_qudit_algebra(const QuditLogicals& q) {
  SparseOperator zn = q.I, xn = q.I;
  for (int k = 0; k < q.n; ++k) {
    zn = zn * q.Z;
    xn = xn * q.X;
  }
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / q.n);
  return {(zn - q.I).frobenius_norm(), (xn - q.I).frobenius_norm(), (q.Z * q.X - w * (q.X * q.Z)).frobenius_norm()};
}

/// Topological label: the colors crossed by a non-contractible dual cut,
/// one cut per winding direction, as a cyclic word reduced by cancelling
/// adjacent equal colors and rotated to its minimum. A move recolors two
/// adjacent crossings "kk" -> "k'k'" of a single cut, which the reduction
/// removes, so the label is constant on sectors.
struct LoopLabel {
  std::vector<std::uint8_t> horizontal;  // crossings of the cut at column 0 (loops winding along x)
  std::vector<std::uint8_t> vertical;    // crossings of the cut at row 0 (loops winding along y)

  friend bool operator==(const LoopLabel&, const LoopLabel&) = default;
  friend auto operator<=>(const LoopLabel&, const LoopLabel&) = default;

  std::string str() const {
    auto word = [](const std::vector<std::uint8_t>& w) {
      std::string s = "(";
      for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
      return s + ")";
    };
    return "x" + word(horizontal) + " y" + word(vertical);
  }
};

inline std::vector<std::uint8_t> reduce_cyclic_word(const std::vector<std::uint8_t>& word) {
  std::vector<std::uint8_t> st;
  for (std::uint8_t c : word) {
    if (!st.empty() && st.back() == c) {
      st.pop_back();
    } else {
      st.push_back(c);
    }
  }
  std::size_t lo = 0, hi = st.size();
  while (hi - lo >= 2 && st[lo] == st[hi - 1]) {
    ++lo;
    --hi;
  }
  std::vector<std::uint8_t> core(st.begin() + static_cast<std::ptrdiff_t>(lo), st.begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<std::uint8_t> best = core;
  for (std::size_t r = 1; r < core.size(); ++r) {
    std::vector<std::uint8_t> rot(core.begin() + static_cast<std::ptrdiff_t>(r), core.end());
    rot.insert(rot.end(), core.begin(), core.begin() + static_cast<std::ptrdiff_t>(r));
    best = std::min(best, rot);
  }
  return best;
}

inline LoopLabel loop_invariant(const ClockConfig& cfg, const ClockLattice& lat) {
  if (!is_valid(cfg, lat)) throw std::invalid_argument("loop_invariant expects a valid configuration");
  std::vector<std::uint8_t> col, row;
  for (int y = 0; y < lat.size(); ++y) col.push_back(cfg.digits[lat.h(0, y)]);
  for (int x = 0; x < lat.size(); ++x) row.push_back(cfg.digits[lat.v(x, 0)]);
  return {reduce_cyclic_word(col), reduce_cyclic_word(row)};
}

/// Label with every color shifted by k, re-canonicalized.
inline LoopLabel shift_label(const LoopLabel& label, int k, int m) {
  auto shift = [&](std::vector<std::uint8_t> w) {
    for (auto& c : w) c = static_cast<std::uint8_t>(((c + k) % m + m) % m);
    return reduce_cyclic_word(w);
  };
  return {shift(label.horizontal), shift(label.vertical)};
}

}  // namespace fragmenta::quadflip

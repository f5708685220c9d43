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
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fragmenta/config.hpp"
#include "fragmenta/lattice.hpp"
#include "fragmenta/parallel.hpp"

namespace fragmenta {

inline constexpr int kMaxDecomposeSites = 24;
inline constexpr int kMaxBruteForceSites = 36;
inline constexpr std::size_t kDefaultSectorCap = std::size_t{1} << 22;

/// Closed-form frozen-state count 2^{L+2} - 8.
inline std::int64_t frozen_formula(int L) { return (std::int64_t{1} << (L + 2)) - 8; }

struct KrylovSector {
  SpinConfig representative;  // smallest member
  std::uint64_t size = 0;
  std::vector<int> syndrome;  // CZ_p sign per plaquette
  bool frozen = false;
};

struct SizeCount {
  std::uint64_t size;
  std::uint64_t count;
};

struct KrylovDecomposition {
  int L = 0;
  std::vector<KrylovSector> sectors;     // sorted by representative
  std::vector<std::uint32_t> sector_of;  // configuration index -> position in sectors

  std::vector<SizeCount> histogram() const {
    std::map<std::uint64_t, std::uint64_t> h;
    for (const auto& s : sectors) ++h[s.size];
    std::vector<SizeCount> out;
    for (const auto& [size, count] : h) out.push_back({size, count});
    return out;
  }
};

inline std::vector<int> cz_syndrome(const SpinConfig& cfg, const Lattice& lat) {
  const std::uint64_t bad = PackedShifts(lat).intersections(cfg.bits());
  std::vector<int> out(lat.num_plaquettes());
  for (int p = 0; p < lat.num_plaquettes(); ++p) out[p] = (bad >> p) & 1U ? -1 : 1;
  return out;
}

namespace detail {

inline std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace detail

/// Connected components of the full configuration space under legal flips.
/// Roots are always the smaller index, so every root is its component's
/// minimum and the output is canonical.
inline KrylovDecomposition krylov_decompose(const Lattice& lat) {
  const int n = lat.num_sites();
  if (n > kMaxDecomposeSites) {
    throw std::length_error("full Krylov decomposition limited to " + std::to_string(kMaxDecomposeSites) +
                            " sites, lattice has " + std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;
  const PackedShifts shifts(lat);
  std::vector<std::uint32_t> moves(dim);
  parallel_for(dim, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) moves[c] = static_cast<std::uint32_t>(shifts.flippable(c));
  });

  std::vector<std::uint32_t> parent(dim);
  std::iota(parent.begin(), parent.end(), 0U);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::uint32_t m = moves[c]; m != 0; m &= m - 1) {
      const std::size_t d = c ^ (std::size_t{1} << std::countr_zero(m));
      if (d < c) continue;  // each edge once; legality is symmetric
      std::uint32_t ra = detail::find_root(parent, static_cast<std::uint32_t>(c));
      std::uint32_t rb = detail::find_root(parent, static_cast<std::uint32_t>(d));
      if (ra == rb) continue;
      if (rb < ra) std::swap(ra, rb);
      parent[rb] = ra;
    }
  }

  KrylovDecomposition out;
  out.L = lat.size();
  out.sector_of.assign(dim, 0);
  std::vector<std::uint32_t> slot(dim, UINT32_MAX);
  for (std::size_t c = 0; c < dim; ++c) {
    const std::uint32_t r = detail::find_root(parent, static_cast<std::uint32_t>(c));
    if (slot[r] == UINT32_MAX) {
      // roots are visited in increasing order, so sectors come out sorted
      slot[r] = static_cast<std::uint32_t>(out.sectors.size());
      const SpinConfig rep(r, lat.size());
      out.sectors.push_back({rep, 0, cz_syndrome(rep, lat), false});
    }
    out.sector_of[c] = slot[r];
    ++out.sectors[slot[r]].size;
  }
  for (auto& s : out.sectors) s.frozen = s.size == 1 && moves[s.representative.index()] == 0;
  return out;
}

/// Component of cfg under legal flips, found by breadth-first search.
inline KrylovSector sector_of(const SpinConfig& cfg, const Lattice& lat, std::size_t cap = kDefaultSectorCap) {
  const PackedShifts shifts(lat);
  std::unordered_set<std::uint64_t> seen{cfg.bits()};
  std::vector<std::uint64_t> frontier{cfg.bits()};
  std::uint64_t smallest = cfg.bits();
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t c : frontier) {
      for (std::uint64_t m = shifts.flippable(c); m != 0; m &= m - 1) {
        const std::uint64_t d = c ^ (m & -m);
        if (!seen.insert(d).second) continue;
        if (seen.size() > cap) throw std::length_error("sector exceeds the exploration cap of " + std::to_string(cap));
        smallest = std::min(smallest, d);
        next.push_back(d);
      }
    }
    frontier = std::move(next);
  }
  const SpinConfig rep(smallest, lat.size());
  const bool frozen = seen.size() == 1 && shifts.flippable(cfg.bits()) == 0;
  return {rep, seen.size(), cz_syndrome(rep, lat), frozen};
}

enum class CountMethod { BruteForce, TransferMatrix };

inline std::string to_string(CountMethod m) { return m == CountMethod::BruteForce ? "brute_force" : "transfer_matrix"; }

struct EnumerationReport {
  int L = 0;
  CountMethod method = CountMethod::BruteForce;
  std::optional<std::uint64_t> count_unflippable;  // brute force only
  std::uint64_t count_code_states = 0;
  std::int64_t formula_value = 0;

  std::optional<bool> unflippable_matches() const {
    if (!count_unflippable) return std::nullopt;
    return static_cast<std::int64_t>(*count_unflippable) == formula_value;
  }
  bool code_states_match() const { return static_cast<std::int64_t>(count_code_states) == formula_value; }
};

/// Exhaustive scan of all 2^{L^2} configurations.
inline EnumerationReport enumerate_frozen(const Lattice& lat) {
  const int n = lat.num_sites();
  if (n > kMaxBruteForceSites) {
    throw std::length_error("brute-force enumeration limited to " + std::to_string(kMaxBruteForceSites) + " sites");
  }
  const PackedShifts shifts(lat);
  using Counts = std::pair<std::uint64_t, std::uint64_t>;
  const Counts counts = parallel_reduce(
      std::size_t{1} << n, Counts{0, 0},
      [&](std::size_t begin, std::size_t end) {
        Counts c{0, 0};
        for (std::size_t k = begin; k < end; ++k) {
          if (shifts.flippable(k) != 0) continue;
          ++c.first;
          if (shifts.intersections(k) == 0) ++c.second;
        }
        return c;
      },
      [](Counts a, Counts b) { return Counts{a.first + b.first, a.second + b.second}; }, 1 << 14);
  EnumerationReport r;
  r.L = lat.size();
  r.method = CountMethod::BruteForce;
  r.count_unflippable = counts.first;
  r.count_code_states = counts.second;
  r.formula_value = frozen_formula(lat.size());
  return r;
}

inline constexpr int kMaxTransferL = 10;

/// Counts code states (unflippable, intersection free) with a row-pair
/// transfer matrix. A state is an ordered pair of adjacent rows (r_{y-1}, r_y);
/// the step to (r_y, r_{y+1}) is admitted when every site of row y is
/// unflippable and no plaquette between rows y and y+1 has CZ = -1. The count
/// is the trace of the L-th power, so periodic closure is exact.
inline std::uint64_t count_code_states_transfer(int L) {
  if (L < 4 || L % 2 != 0 || L > kMaxTransferL) {
    throw std::invalid_argument("transfer counting requires even L with 4 <= L <= " + std::to_string(kMaxTransferL));
  }
  const std::uint32_t rows = 1U << L;
  const std::uint32_t full = rows - 1;
  // bit x of east(r) is bit x+1 of r
  auto east = [&](std::uint32_t r) { return ((r >> 1) | (r << (L - 1))) & full; };
  auto west = [&](std::uint32_t r) { return ((r << 1) | (r >> (L - 1))) & full; };
  auto plaquettes_ok = [&](std::uint32_t lower, std::uint32_t upper) {
    return ((lower ^ east(upper)) & (east(lower) ^ upper)) == 0;
  };
  auto row_unflippable = [&](std::uint32_t below, std::uint32_t row, std::uint32_t above) {
    const std::uint32_t e = east(row), w = west(row);
    return ((below & above & e & w) | (~(below | above | e | w) & full)) == 0;
  };

  // Admissible row pairs, each an index into `pairs`.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::int32_t> pair_id(std::size_t{rows} * rows, -1);
  std::vector<std::vector<std::uint32_t>> uppers(rows);
  std::vector<std::vector<std::uint32_t>> lowers(rows);
  for (std::uint32_t a = 0; a < rows; ++a) {
    for (std::uint32_t b = 0; b < rows; ++b) {
      if (!plaquettes_ok(a, b)) continue;
      pair_id[std::size_t{a} * rows + b] = static_cast<std::int32_t>(pairs.size());
      pairs.emplace_back(a, b);
      uppers[a].push_back(b);
      lowers[b].push_back(a);
    }
  }
  std::vector<std::vector<std::uint32_t>> succ(pairs.size());
  for (std::uint32_t b = 0; b < rows; ++b) {
    for (std::uint32_t a : lowers[b]) {
      const auto from = static_cast<std::uint32_t>(pair_id[std::size_t{a} * rows + b]);
      for (std::uint32_t c : uppers[b]) {
        if (row_unflippable(a, b, c)) succ[from].push_back(static_cast<std::uint32_t>(pair_id[std::size_t{b} * rows + c]));
      }
    }
  }
  // Only pairs on some cycle can contribute; prune sources and sinks.
  std::vector<std::uint32_t> indeg(pairs.size(), 0), outdeg(pairs.size(), 0);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    outdeg[s] = static_cast<std::uint32_t>(succ[s].size());
    for (std::uint32_t t : succ[s]) ++indeg[t];
  }
  std::vector<std::vector<std::uint32_t>> pred(pairs.size());
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    for (std::uint32_t t : succ[s]) pred[t].push_back(static_cast<std::uint32_t>(s));
  }
  std::vector<char> alive(pairs.size(), 1);
  std::vector<std::uint32_t> stack;
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    if (indeg[s] == 0 || outdeg[s] == 0) stack.push_back(static_cast<std::uint32_t>(s));
  }
  while (!stack.empty()) {
    const std::uint32_t s = stack.back();
    stack.pop_back();
    if (!alive[s]) continue;
    alive[s] = 0;
    for (std::uint32_t t : succ[s]) {
      if (alive[t] && --indeg[t] == 0) stack.push_back(t);
    }
    for (std::uint32_t t : pred[s]) {
      if (alive[t] && --outdeg[t] == 0) stack.push_back(t);
    }
  }
  std::vector<std::uint32_t> live;
  std::vector<std::int32_t> local(pairs.size(), -1);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    if (alive[s]) {
      local[s] = static_cast<std::int32_t>(live.size());
      live.push_back(static_cast<std::uint32_t>(s));
    }
  }

  std::uint64_t trace = 0;
  std::vector<std::uint64_t> cur(live.size()), nxt(live.size());
  for (std::size_t start = 0; start < live.size(); ++start) {
    std::fill(cur.begin(), cur.end(), 0);
    cur[start] = 1;
    for (int step = 0; step < L; ++step) {
      std::fill(nxt.begin(), nxt.end(), 0);
      for (std::size_t k = 0; k < live.size(); ++k) {
        if (cur[k] == 0) continue;
        for (std::uint32_t t : succ[live[k]]) {
          if (local[t] >= 0) nxt[static_cast<std::size_t>(local[t])] += cur[k];
        }
      }
      std::swap(cur, nxt);
    }
    trace += cur[start];
  }
  return trace;
}

inline EnumerationReport count_code_states_report(int L) {
  EnumerationReport r;
  r.L = L;
  r.method = CountMethod::TransferMatrix;
  r.count_code_states = count_code_states_transfer(L);
  r.formula_value = frozen_formula(L);
  return r;
}

}  // namespace fragmenta

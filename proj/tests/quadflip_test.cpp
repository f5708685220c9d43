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


#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fragmenta/quadflip.hpp"

namespace fragmenta::quadflip {
namespace {

// Independent bookkeeping: link (x, y, dir) with dir 0 = horizontal, 1 = vertical.
struct Naive {
  int L, m;
  int link(int x, int y, int dir) const { return dir * L * L + ((y % L + L) % L) * L + ((x % L + L) % L); }

  bool valid(const std::vector<int>& d) const {
    for (int y = 0; y < L; ++y) {
      for (int x = 0; x < L; ++x) {
        const int e = d[link(x, y, 0)], w = d[link(x - 1, y, 0)], n = d[link(x, y, 1)], s = d[link(x, y - 1, 1)];
        for (int k = 0; k < m; ++k) {
          if ((e == k) + (w == k) != (n == k) + (s == k)) return false;
        }
      }
    }
    return true;
  }

  std::vector<std::vector<int>> neighbors(const std::vector<int>& d) const {
    std::vector<std::vector<int>> out;
    for (int y = 0; y < L; ++y) {
      for (int x = 0; x < L; ++x) {
        const int ls[4] = {link(x, y, 0), link(x + 1, y, 1), link(x, y + 1, 0), link(x, y, 1)};
        const int c = d[ls[0]];
        if (d[ls[1]] != c || d[ls[2]] != c || d[ls[3]] != c) continue;
        for (int t = 0; t < m; ++t) {
          if (t == c) continue;
          auto e = d;
          for (int l : ls) e[l] = t;
          out.push_back(e);
        }
      }
    }
    return out;
  }
};

std::pair<std::size_t, std::size_t> naive_counts(int L, int m) {
  const Naive nv{L, m};
  const int links = 2 * L * L;
  std::set<std::vector<int>> valid;
  std::uint64_t total = 1;
  for (int k = 0; k < links; ++k) total *= m;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<int> d(links);
    std::uint64_t c = code;
    for (int k = 0; k < links; ++k, c /= m) d[k] = static_cast<int>(c % m);
    if (nv.valid(d)) valid.insert(d);
  }
  std::set<std::vector<int>> seen;
  std::size_t sectors = 0;
  for (const auto& start : valid) {
    if (seen.count(start)) continue;
    ++sectors;
    std::vector<std::vector<int>> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      for (const auto& nb : nv.neighbors(cur)) {
        if (seen.insert(nb).second) stack.push_back(nb);
      }
    }
  }
  return {valid.size(), sectors};
}

class QuadflipTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { decomposition_ = new Decomposition(krylov_decompose_quadflip(ClockLattice(2), 3)); }
  static void TearDownTestSuite() {
    delete decomposition_;
    decomposition_ = nullptr;
  }
  static Decomposition* decomposition_;
  const ClockLattice lat_{2};
};

Decomposition* QuadflipTest::decomposition_ = nullptr;

TEST_F(QuadflipTest, CountsMatchNaiveEnumeration) {
  const auto [valid, sectors] = naive_counts(2, 3);
  EXPECT_EQ(decomposition_->valid.size(), valid);
  EXPECT_EQ(decomposition_->sectors.size(), sectors);
  EXPECT_EQ(valid, 51u);
  EXPECT_EQ(sectors, 37u);
}

TEST(QuadflipNaiveTest, OtherClockSizes) {
  for (int m : {2, 4}) {
    const Decomposition d = krylov_decompose_quadflip(ClockLattice(2), m);
    const auto [valid, sectors] = naive_counts(2, m);
    EXPECT_EQ(d.valid.size(), valid) << m;
    EXPECT_EQ(d.sectors.size(), sectors) << m;
  }
}

TEST_F(QuadflipTest, MovesPreserveValidity) {
  for (const ClockConfig& c : decomposition_->valid) {
    EXPECT_TRUE(is_valid(c, lat_));
    for (const Move& mv : legal_moves(c, lat_)) {
      const ClockConfig d = apply_move(c, lat_, mv);
      EXPECT_TRUE(is_valid(d, lat_));
      EXPECT_EQ(decomposition_->sector_of[decomposition_->index(d)],
                decomposition_->sector_of[decomposition_->index(c)]);
    }
  }
  EXPECT_THROW(apply_move(ClockConfig::uniform(lat_, 3, 0), lat_, {0, 1, 2}), std::invalid_argument);
}

TEST_F(QuadflipTest, FluxOfUniformConfigVanishes) {
  const ClockConfig u = ClockConfig::uniform(lat_, 3, 2);
  for (int l = 0; l < lat_.num_flux_loops(); ++l) {
    for (int k = 0; k < 3; ++k) EXPECT_EQ(flux_density(u, lat_, l, k), 0);
  }
  ClockConfig bad = u;
  bad.digits[0] = 1;
  EXPECT_FALSE(is_valid(bad, lat_));
}

TEST_F(QuadflipTest, ShiftOrbits) {
  const MultipletAnalysis ma = find_multiplets(*decomposition_);
  EXPECT_EQ(ma.multiplets.size(), 12u);
  EXPECT_EQ(ma.symmetric_sectors.size(), 1u);
  EXPECT_EQ(ma.orbit_size_counts.at(3), 12u);
  EXPECT_EQ(ma.orbit_size_counts.at(1), 1u);
  EXPECT_EQ(decomposition_->sectors[ma.symmetric_sectors[0]].members.size(), 15u);
  for (const auto& mp : ma.multiplets) {
    for (int k = 0; k < 3; ++k) EXPECT_EQ(shifted_sector(*decomposition_, mp.sectors[0], k), mp.sectors[k]);
  }
}

TEST_F(QuadflipTest, QuditAlgebra) {
  const MultipletAnalysis ma = find_multiplets(*decomposition_);
  for (const auto& mp : ma.multiplets) {
    const QuditLogicals q = qudit_logicals(*decomposition_, mp);
    EXPECT_EQ(q.n, 3);
    EXPECT_LE(verify_qudit_algebra(q).max(), 1e-12);
  }
}

TEST_F(QuadflipTest, LoopInvariantConstantOnSectors) {
  std::set<LoopLabel> labels;
  for (const Sector& s : decomposition_->sectors) {
    const LoopLabel first = loop_invariant(decomposition_->valid[s.members.front()], lat_);
    labels.insert(first);
    for (std::uint32_t idx : s.members) EXPECT_EQ(loop_invariant(decomposition_->valid[idx], lat_), first);
  }
  EXPECT_GE(labels.size(), 2u);
  EXPECT_EQ(labels.size(), 10u);
}

TEST_F(QuadflipTest, LabelsFollowTheShift) {
  for (const ClockConfig& c : decomposition_->valid) {
    EXPECT_EQ(loop_invariant(global_shift(c, 1), lat_), shift_label(loop_invariant(c, lat_), 1, 3));
  }
}

TEST(QuadflipWordTest, CyclicReduction) {
  using W = std::vector<std::uint8_t>;
  EXPECT_EQ(reduce_cyclic_word(W{1, 1}), W{});
  EXPECT_EQ(reduce_cyclic_word(W{2, 0, 1}), (W{0, 1, 2}));
  EXPECT_EQ(reduce_cyclic_word(W{1, 2, 2, 0, 1}), W{0});
  EXPECT_EQ(reduce_cyclic_word(W{}), W{});
}

TEST(QuadflipMiscTest, Validation) {
  EXPECT_THROW(ClockLattice(4), std::invalid_argument);
  EXPECT_THROW(krylov_decompose_quadflip(ClockLattice(2), 6), std::invalid_argument);
  EXPECT_TRUE(is_prime(3));
  EXPECT_FALSE(is_prime(4));
  const ClockConfig c = ClockConfig::from_code(4321, 8, 3);
  EXPECT_EQ(c.code(), 4321u);
}

}  // namespace
}  // namespace fragmenta::quadflip

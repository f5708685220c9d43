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

#include <queue>
#include <random>
#include <set>

#include "fragmenta/fragmentation.hpp"

namespace fragmenta {
namespace {

// Row-by-row backtracking over explicit site lists, with no packed words.
class CodeStateCounter {
 public:
  explicit CodeStateCounter(int L) : L_(L), grid_(L, std::vector<int>(L, 0)) {}

  std::uint64_t count() {
    fill(0);
    return total_;
  }

 private:
  int at(int x, int y) const { return grid_[((y % L_) + L_) % L_][((x % L_) + L_) % L_]; }

  bool unflippable(int x, int y) const {
    const int s = at(x + 1, y) + at(x - 1, y) + at(x, y + 1) + at(x, y - 1);
    return s != 0 && s != 4;
  }

  bool no_intersection(int x, int y) const {
    return !(at(x, y) != at(x + 1, y + 1) && at(x + 1, y) != at(x, y + 1));
  }

  bool rows_ok(int y) const {
    for (int x = 0; x < L_; ++x) {
      if (!no_intersection(x, y - 1)) return false;
      if (y >= 2 && !unflippable(x, y - 1)) return false;
    }
    return true;
  }

  void fill(int y) {
    if (y == L_) {
      for (int x = 0; x < L_; ++x) {
        if (!no_intersection(x, L_ - 1) || !unflippable(x, L_ - 1) || !unflippable(x, 0)) return;
      }
      ++total_;
      return;
    }
    for (int word = 0; word < (1 << L_); ++word) {
      for (int x = 0; x < L_; ++x) grid_[y][x] = (word >> x) & 1;
      if (y == 0 || rows_ok(y)) fill(y + 1);
    }
  }

  int L_;
  std::vector<std::vector<int>> grid_;
  std::uint64_t total_ = 0;
};

TEST(FragmentationTest, FormulaValues) {
  EXPECT_EQ(frozen_formula(4), 56);
  EXPECT_EQ(frozen_formula(6), 248);
  EXPECT_EQ(frozen_formula(8), 1016);
}

TEST(FragmentationTest, BruteForceCountsAtL4) {
  const EnumerationReport r = enumerate_frozen(Lattice(4));
  EXPECT_EQ(r.count_code_states, 56u);
  EXPECT_EQ(r.count_code_states, CodeStateCounter(4).count());
  ASSERT_TRUE(r.count_unflippable.has_value());
  EXPECT_EQ(*r.count_unflippable, 13924u);
  EXPECT_TRUE(r.code_states_match());
  EXPECT_FALSE(*r.unflippable_matches());
}

TEST(FragmentationTest, TransferMatchesBacktracking) {
  EXPECT_EQ(count_code_states_transfer(4), 56u);
  EXPECT_EQ(count_code_states_transfer(6), CodeStateCounter(6).count());
  EXPECT_EQ(count_code_states_transfer(6), 0u);
  EXPECT_EQ(count_code_states_transfer(8), 1016u);
  EXPECT_THROW(count_code_states_transfer(5), std::invalid_argument);
  EXPECT_THROW(count_code_states_transfer(12), std::invalid_argument);
}

TEST(FragmentationTest, TransferReport) {
  const EnumerationReport r = count_code_states_report(8);
  EXPECT_EQ(r.method, CountMethod::TransferMatrix);
  EXPECT_FALSE(r.count_unflippable.has_value());
  EXPECT_TRUE(r.code_states_match());
  EXPECT_FALSE(count_code_states_report(6).code_states_match());
}

class DecompositionTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { decomposition_ = new KrylovDecomposition(krylov_decompose(Lattice(4))); }
  static void TearDownTestSuite() {
    delete decomposition_;
    decomposition_ = nullptr;
  }
  static KrylovDecomposition* decomposition_;
};

KrylovDecomposition* DecompositionTest::decomposition_ = nullptr;

TEST_F(DecompositionTest, SizesPartitionTheSpace) {
  const auto& d = *decomposition_;
  std::uint64_t total = 0, frozen = 0;
  for (const auto& s : d.sectors) {
    total += s.size;
    frozen += s.frozen;
    EXPECT_EQ(s.frozen, s.size == 1);
  }
  EXPECT_EQ(total, 65536u);
  EXPECT_EQ(frozen, 13924u);
  EXPECT_EQ(d.sectors.size(), 24613u);
  const auto hist = d.histogram();
  EXPECT_EQ(hist.back().size, 1980u);
  EXPECT_EQ(hist.back().count, 1u);
}

TEST_F(DecompositionTest, SectorsClosedUnderMoves) {
  const Lattice lat(4);
  const auto& d = *decomposition_;
  for (std::uint64_t c = 0; c < 65536; ++c) {
    const SpinConfig cfg(c, 4);
    for (int i = 0; i < 16; ++i) {
      if (!is_flippable(cfg, lat, i)) continue;
      ASSERT_EQ(d.sector_of[c], d.sector_of[apply_flip(cfg, i).index()]);
    }
  }
}

TEST_F(DecompositionTest, RepresentativeIsSmallestMember) {
  const auto& d = *decomposition_;
  std::vector<std::uint64_t> smallest(d.sectors.size(), UINT64_MAX);
  for (std::uint64_t c = 0; c < 65536; ++c) smallest[d.sector_of[c]] = std::min(smallest[d.sector_of[c]], c);
  for (std::size_t s = 0; s < d.sectors.size(); ++s) EXPECT_EQ(d.sectors[s].representative.bits(), smallest[s]);
}

TEST_F(DecompositionTest, BfsAgreesWithUnionFind) {
  const Lattice lat(4);
  const auto& d = *decomposition_;
  std::mt19937_64 rng(5);
  for (int n = 0; n < 40; ++n) {
    const SpinConfig cfg(rng() & 0xffff, 4);
    const KrylovSector s = sector_of(cfg, lat);
    const KrylovSector& t = d.sectors[d.sector_of[cfg.index()]];
    EXPECT_EQ(s.size, t.size);
    EXPECT_EQ(s.representative, t.representative);
    EXPECT_EQ(s.syndrome, t.syndrome);
  }
  EXPECT_THROW(sector_of(SpinConfig(0, 4), lat, 10), std::length_error);
}

TEST_F(DecompositionTest, SyndromeConstantOnSectors) {
  const Lattice lat(4);
  const auto& d = *decomposition_;
  for (std::uint64_t c = 0; c < 65536; c += 7) {
    EXPECT_EQ(cz_syndrome(SpinConfig(c, 4), lat), d.sectors[d.sector_of[c]].syndrome);
  }
}

}  // namespace
}  // namespace fragmenta

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

#include <set>

#include "fragmenta/encoding.hpp"

namespace fragmenta {
namespace {

class EncodingTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { inventory_ = new BlockInventory(enumerate_blocks(Lattice(4))); }
  static void TearDownTestSuite() {
    delete inventory_;
    inventory_ = nullptr;
  }
  static BlockInventory* inventory_;
  const Lattice lat_{4};
};

BlockInventory* EncodingTest::inventory_ = nullptr;

TEST_F(EncodingTest, BlockCounts) {
  const BlockInventory& inv = *inventory_;
  EXPECT_EQ(inv.code_states, 56u);
  EXPECT_EQ(inv.blocks.size(), 14u);
  EXPECT_EQ(inv.logical_qubits(), 28u);
  EXPECT_TRUE(inv.degenerate.empty());
  EXPECT_TRUE(inv.consistent());
}

TEST_F(EncodingTest, RepresentativesAreSorted) {
  const std::vector<std::uint64_t> want = {1530,  2805,  5355,  7140,  10200, 10455, 13878,
                                           13881, 14022, 14025, 14646, 14649, 14790, 14793};
  ASSERT_EQ(inventory_->blocks.size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_EQ(inventory_->blocks[k].alpha.bits(), want[k]);
}

TEST_F(EncodingTest, MembersFollowToggles) {
  std::set<SpinConfig> all;
  for (const LogicalBlock& b : inventory_->blocks) {
    EXPECT_EQ(b.member(0, 0), b.alpha);
    EXPECT_EQ(b.member(1, 0), toggle(b.alpha, lat_, Sublattice::A));
    EXPECT_EQ(b.member(0, 1), toggle(b.alpha, lat_, Sublattice::B));
    EXPECT_EQ(b.member(1, 1), toggle(toggle(b.alpha, lat_, Sublattice::A), lat_, Sublattice::B));
    for (const SpinConfig& m : b.members) {
      EXPECT_TRUE(is_code_state(m, lat_));
      EXPECT_GE(m, b.alpha);
      all.insert(m);
    }
  }
  EXPECT_EQ(all.size(), 56u);
}

TEST_F(EncodingTest, OrbitRejectsNonCodeStates) {
  EXPECT_THROW(symmetry_orbit(SpinConfig(0, 4), lat_), std::invalid_argument);
  const LogicalBlock b = make_block(inventory_->blocks[3].member(1, 1), lat_);
  EXPECT_EQ(b.alpha, inventory_->blocks[3].alpha);
}

TEST_F(EncodingTest, RestrictionsAreTensorPaulis) {
  using M2 = Eigen::Matrix2cd;
  const Complex i{0, 1};
  M2 I = M2::Identity(), X, Y, Z;
  X << 0, 1, 1, 0;
  Y << 0, -i, i, 0;
  Z << 1, 0, 0, -1;
  // member_index(sA, sB) = 2 sA + sB: qubit A is the high index bit
  auto kron = [](const M2& a, const M2& b) {
    Eigen::Matrix4cd out;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) out(r, c) = a(r / 2, c / 2) * b(r % 2, c % 2);
    }
    return out;
  };
  const M2 paulis[4] = {I, X, Y, Z};
  const LogicalKind kinds[4] = {LogicalKind::I, LogicalKind::X, LogicalKind::Y, LogicalKind::Z};
  for (const LogicalBlock& b : {inventory_->blocks.front(), inventory_->blocks.back()}) {
    const LogicalOperators ops = logical_operators(b, lat_);
    for (int k = 0; k < 4; ++k) {
      const Eigen::Matrix4cd a = restrict_to_block(ops.get(Sublattice::A, kinds[k]), b);
      const Eigen::Matrix4cd bq = restrict_to_block(ops.get(Sublattice::B, kinds[k]), b);
      EXPECT_LT((a - kron(paulis[k], I)).norm(), 1e-14) << to_char(kinds[k]);
      EXPECT_LT((bq - kron(I, paulis[k])).norm(), 1e-14) << to_char(kinds[k]);
      EXPECT_LT(hermiticity_residual(ops.get(Sublattice::A, kinds[k])), 1e-14);
    }
  }
}

TEST_F(EncodingTest, OperatorsSupportedOnBlock) {
  const LogicalBlock& b = inventory_->blocks[5];
  const LogicalOperators ops = logical_operators(b, lat_);
  std::set<std::size_t> members;
  for (const auto& m : b.members) members.insert(m.index());
  for (LogicalKind k : {LogicalKind::I, LogicalKind::X, LogicalKind::Y, LogicalKind::Z}) {
    for (const auto& e : ops.get(Sublattice::B, k).entries()) {
      EXPECT_TRUE(members.count(e.row));
      EXPECT_TRUE(members.count(e.col));
    }
  }
}

TEST_F(EncodingTest, PauliAlgebraOnEveryBlock) {
  for (const LogicalBlock& b : inventory_->blocks) {
    const AlgebraReport rep = verify_pauli_algebra(b, lat_);
    EXPECT_EQ(rep.checks.size(), 2u * 7 + 9);
    EXPECT_LE(rep.max_residual, 1e-12);
  }
}

TEST_F(EncodingTest, TomographyOfProductStates) {
  const LogicalBlock& b = inventory_->blocks[0];
  const double h = 1 / std::sqrt(2.0);
  const Tomography plus = logical_tomography(logical_state(b, lat_, {Complex{h}, 0, Complex{h}, 0}), b, lat_);
  EXPECT_NEAR(plus.x[0], 1, 1e-14);
  EXPECT_NEAR(plus.z[1], 1, 1e-14);
  EXPECT_NEAR(plus.xz, 1, 1e-14);
  EXPECT_NEAR(plus.population, 1, 1e-14);
  const Tomography one = logical_tomography(logical_state(b, lat_, {0, Complex{1}, 0, 0}), b, lat_);
  EXPECT_NEAR(one.z[0], 1, 1e-14);
  EXPECT_NEAR(one.z[1], -1, 1e-14);
  EXPECT_NEAR(one.zz, -1, 1e-14);
  EXPECT_THROW(logical_state(b, lat_, {Complex{1}, Complex{1}, 0, 0}), std::invalid_argument);
}

}  // namespace
}  // namespace fragmenta

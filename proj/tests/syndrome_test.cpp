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

#include "fragmenta/syndrome.hpp"

namespace fragmenta {
namespace {

class SyndromeTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { inventory_ = new BlockInventory(enumerate_blocks(Lattice(4))); }
  static void TearDownTestSuite() {
    delete inventory_;
    inventory_ = nullptr;
  }
  static BlockInventory* inventory_;
  const Lattice lat_{4};
};

BlockInventory* SyndromeTest::inventory_ = nullptr;

TEST_F(SyndromeTest, CodeStatesHaveTrivialSyndrome) {
  for (const LogicalBlock& b : inventory_->blocks) {
    for (const SpinConfig& m : b.members) {
      const auto s = extract_syndrome(m, lat_);
      EXPECT_EQ(std::count(s.begin(), s.end(), -1), 0);
    }
  }
}

TEST_F(SyndromeTest, BitFlipLightsItsFourPlaquettes) {
  const SpinConfig& alpha = inventory_->blocks[2].alpha;
  for (int i = 0; i < lat_.num_sites(); ++i) {
    const auto s = extract_syndrome(apply_flip(alpha, i), lat_);
    std::set<int> lit;
    for (int p = 0; p < lat_.num_plaquettes(); ++p) {
      if (s[p] == -1) lit.insert(p);
    }
    const auto touching = lat_.plaquettes_of(i);
    EXPECT_EQ(lit, std::set<int>(touching.begin(), touching.end()));
  }
}

TEST_F(SyndromeTest, InjectPauliActions) {
  StateVector psi(65536, Complex{0, 0});
  psi[0b101] = 1;
  const StateVector x = inject_pauli(psi, 1, Pauli::X);
  EXPECT_EQ(x[0b111], Complex(1, 0));
  const StateVector z = inject_pauli(psi, 2, Pauli::Z);
  EXPECT_EQ(z[0b101], Complex(-1, 0));
  // Y|1> = -i|0>
  const StateVector y = inject_pauli(psi, 0, Pauli::Y);
  EXPECT_EQ(y[0b100], Complex(0, -1));
  EXPECT_THROW(inject_pauli(psi, 16, Pauli::X), std::out_of_range);
  EXPECT_EQ(parse_pauli("y"), Pauli::Y);
  EXPECT_THROW(parse_pauli("W"), std::invalid_argument);
}

TEST_F(SyndromeTest, DetectionExhaustive) {
  for (const LogicalBlock& b : inventory_->blocks) {
    const LogicalOperators ops = logical_operators(b, lat_);
    for (int site = 0; site < lat_.num_sites(); ++site) {
      const DetectionReport x = detection_experiment(b, lat_, ops, site, Pauli::X);
      EXPECT_FALSE(x.mixed);
      EXPECT_EQ(x.defects, 4);
      EXPECT_TRUE(x.detected());
      const DetectionReport y = detection_experiment(b, lat_, ops, site, Pauli::Y);
      EXPECT_EQ(y.defects, 4);
      const DetectionReport z = detection_experiment(b, lat_, ops, site, Pauli::Z);
      EXPECT_EQ(z.defects, 0);
      EXPECT_NEAR(z.x_a_before, 1, 1e-12);
      if (lat_.sublattice(site) == Sublattice::A) {
        EXPECT_NEAR(z.after.x[0], -1, 1e-12);
        EXPECT_TRUE(z.silent_logical_flip());
      } else {
        EXPECT_NEAR(z.after.x[0], 1, 1e-12);
        EXPECT_FALSE(z.silent_logical_flip());
      }
    }
  }
}

TEST_F(SyndromeTest, MixedSupportIsFlagged) {
  const LogicalBlock& b = inventory_->blocks[0];
  StateVector psi(65536, Complex{0, 0});
  psi[b.alpha.index()] = 1 / std::sqrt(2.0);
  psi[apply_flip(b.alpha, 3).index()] = 1 / std::sqrt(2.0);
  const SyndromeReading r = extract_syndrome(psi, lat_);
  EXPECT_TRUE(r.mixed);
  EXPECT_TRUE(r.signs.empty());
  for (int p : lat_.plaquettes_of(3)) EXPECT_NEAR(r.expectations[p], 0, 1e-15);
}

}  // namespace
}  // namespace fragmenta

// Copyright 2026 The tailent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "tailent/catalog.hpp"
#include "tailent/counting.hpp"
#include "tailent/errors.hpp"
#include "tailent/verify.hpp"

namespace tailent {
namespace {

using testing::cover_from_masks;
using testing::Mask;

PointSet set_of(std::size_t universe, Mask m) {
  PointSet s(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if (m >> i & 1u) s.insert(i);
  return s;
}

TEST(MinCover, ThreePairsNeedTwo) {
  std::vector<PointSet> fam = {set_of(3, 0b011), set_of(3, 0b110), set_of(3, 0b101)};
  EXPECT_EQ(min_cover_size(set_of(3, 0b111), fam), 2u);
  EXPECT_EQ(min_cover_size(set_of(3, 0b001), fam), 1u);
}

TEST(MinCover, EmptyTargetCountsOne) {
  std::vector<PointSet> fam = {set_of(2, 0b01)};
  EXPECT_EQ(min_cover_size(PointSet(2), fam), 1u);
}

TEST(MinCover, UncoverableTarget) {
  std::vector<PointSet> fam = {set_of(2, 0b01)};
  EXPECT_THROW(min_cover_size(set_of(2, 0b11), fam), DomainError);
}

TEST(MinCover, MatchesSubsetEnumeration) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t u = 1 + gen() % 12, m = 1 + gen() % 8;
    std::vector<Mask> fam;
    std::vector<PointSet> sets;
    Mask all = 0;
    for (std::size_t i = 0; i < m; ++i) {
      Mask x = static_cast<Mask>(gen()) & ((Mask{1} << u) - 1);
      fam.push_back(x);
      sets.push_back(set_of(u, x));
      all |= x;
    }
    Mask target = static_cast<Mask>(gen()) & all;
    EXPECT_EQ(min_cover_size(set_of(u, target), sets), testing::min_cover_oracle(target, fam));
  }
}

TEST(RelativeCount, SysASingletonsOverTrivial) {
  SystemPtr a = sys_a();
  for (std::size_t n = 1; n <= 5; ++n) {
    CountProfile p = count_profile(singleton_partition(a), trivial_cover(a), n);
    EXPECT_EQ(p.counts, (std::vector<std::size_t>{2, 2})) << n;
  }
}

TEST(RelativeCount, MatchesOracleOnRandomSystems) {
  for (std::size_t trial = 0; trial < 60; ++trial) {
    TrialRng rng(11, trial);
    SystemPtr sys = random_system(rng);
    RandomCover r = random_cover(rng, sys, 1, 4, "r");
    RandomCover q = random_cover(rng, sys, 1, 3, "q");
    CountEngine engine(r, q);
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t w = 0; w < sys->num_fibers(); ++w)
        EXPECT_EQ(engine.count(w, n), testing::relative_count_oracle(r, q, w, n))
            << "trial " << trial << " n " << n << " w " << w;
  }
}

// Three fibers in a cycle with identity-like maps. The pullback compared at
// theta w against w fails, while the comparison at w against theta w holds.
TEST(RelativeCount, PullbackOrientation) {
  auto sys = testing::build_system({"1/3", "1/3", "1/3"}, {1, 2, 0},
                                   {{"x0", "y0"}, {"x1", "y1"}, {"x2", "y2"}},
                                   {{"x1", "y1"}, {"x2", "y2"}, {"x0", "y0"}});
  RandomCover r = cover_from_masks(sys, {{0b11, 0b01, 0b01}, {0b00, 0b10, 0b10}});
  RandomCover q = trivial_cover(sys);
  RandomCover pr = pullback(r, 1), pq = pullback(q, 1);
  EXPECT_EQ(relative_count(r, q, 0), 1u);
  EXPECT_EQ(relative_count(pr, pq, 1), 2u);
  EXPECT_GT(relative_count(pr, pq, 1), relative_count(r, q, 0));
  for (std::size_t w = 0; w < 3; ++w)
    EXPECT_LE(relative_count(pr, pq, w), relative_count(r, q, sys->base().theta(w)));
}

TEST(RelativeCount, MaxOverFibers) {
  SystemPtr a = sys_a();
  RandomCover q = cover_from_masks(a, {{0b11, 0b01}, {0b00, 0b10}});
  EXPECT_EQ(relative_count(singleton_partition(a), q, 0), 2u);
  EXPECT_EQ(relative_count(singleton_partition(a), q, 1), 1u);
  EXPECT_EQ(relative_count_max(singleton_partition(a), q), 2u);
}

}  // namespace
}  // namespace tailent

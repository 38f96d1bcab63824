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

#include <random>

#include "helpers.hpp"
#include "tailent/catalog.hpp"
#include "tailent/covers.hpp"
#include "tailent/errors.hpp"
#include "tailent/verify.hpp"

namespace tailent {
namespace {

using testing::cover_from_masks;
using testing::Mask;

TEST(Cover, MustCoverEveryFiber) {
  SystemPtr a = sys_a();
  EXPECT_THROW(cover_from_masks(a, {{0b01, 0b11}}), Error);
  RandomCover c = cover_from_masks(a, {{0b01, 0b11}, {0b10, 0b00}});
  EXPECT_TRUE(is_partition(c));
  EXPECT_FALSE(is_partition(cover_from_masks(a, {{0b11, 0b11}, {0b10, 0b01}})));
}

TEST(Cover, Builtins) {
  SystemPtr a = sys_a();
  EXPECT_EQ(trivial_cover(a).size(), 1u);
  EXPECT_EQ(singleton_partition(a).size(), 4u);
  EXPECT_EQ(fiber_partition(a).size(), 2u);
  SystemPtr h = product_system(a, a);
  RandomCover first = first_coordinate_partition(h);
  EXPECT_TRUE(is_partition(first));
  EXPECT_EQ(first.size(), 4u);
  EXPECT_TRUE(refines(singleton_partition(h), first));
  EXPECT_FALSE(refines(first, singleton_partition(h)));
}

TEST(Cover, JoinDropsEmptyAndRepeats) {
  SystemPtr a = sys_a();
  RandomCover c = cover_from_masks(a, {{0b01, 0b01}, {0b10, 0b10}});
  RandomCover j = join(c, c);
  EXPECT_EQ(j.size(), 2u);
  EXPECT_THROW(join(c, trivial_cover(sys_b())), IncompatibleSystems);
}

TEST(Cover, RefinementModes) {
  SystemPtr a = sys_a();
  // Element 0 fits under q0 on fiber 0 and under q1 on fiber 1.
  RandomCover r = cover_from_masks(a, {{0b01, 0b10}, {0b10, 0b01}});
  RandomCover q = cover_from_masks(a, {{0b01, 0b01}, {0b10, 0b10}});
  EXPECT_FALSE(refines(r, q, RefinementMode::kUniform));
  EXPECT_TRUE(refines(r, q, RefinementMode::kFiberwise));
}

TEST(Cover, IteratedTracesMatchTupleOracle) {
  for (std::size_t trial = 0; trial < 40; ++trial) {
    TrialRng rng(99, trial);
    SystemPtr sys = random_system(rng);
    RandomCover c = random_cover(rng, sys, 1, 3, "c");
    IteratedTraces it(c);
    for (std::size_t n = 1; n <= 4; ++n) {
      RandomCover full = iterate_cover(c, n);
      for (std::size_t w = 0; w < sys->num_fibers(); ++w) {
        auto oracle = testing::iterated_traces_oracle(c, w, n);
        std::vector<Mask> got, via_join;
        for (const auto& s : it.at(w, n)) got.push_back(testing::to_mask(s));
        for (const auto& s : fiber_traces(full, w)) via_join.push_back(testing::to_mask(s));
        std::sort(got.begin(), got.end());
        std::sort(via_join.begin(), via_join.end());
        EXPECT_EQ(got, oracle) << "trial " << trial << " n " << n;
        EXPECT_EQ(via_join, oracle) << "trial " << trial << " n " << n;
      }
    }
  }
}

TEST(Cover, PreimageAlongFactor) {
  auto ext = extension_examples();
  const FactorMap& pi = ext[1].pi;
  RandomCover pre = preimage_cover(pi, singleton_partition(pi.target()));
  EXPECT_TRUE(same_traces(pre, factor_partition(pi)));
}

TEST(Cover, IterateBudget) {
  SystemPtr b = sys_b();
  RandomCover halves = cover_from_masks(b, {{0b0011}, {0b1100}});
  Budget tight;
  tight.max_cover_elements = 2;
  EXPECT_NO_THROW(iterate_cover(halves, 1, tight));
  EXPECT_THROW(iterate_cover(halves, 2, tight), BudgetExceeded);
}

TEST(Diameter, SmallDiameterPartitionRespectsDelta) {
  for (std::size_t trial = 0; trial < 30; ++trial) {
    TrialRng rng(7, trial);
    SystemPtr sys = random_system(rng);
    std::vector<Rational> delta(sys->num_fibers(), Rational(5, 4));
    SmallDiameterPartition p = small_diameter_partition(sys, delta);
    EXPECT_TRUE(is_partition(p.partition));
    for (std::size_t w = 0; w < sys->num_fibers(); ++w)
      for (const auto& t : fiber_traces(p.partition, w)) {
        Rational worst = 0;
        auto m = t.members();
        for (auto x : m)
          for (auto y : m)
            if (sys->distance(w, x, y) > worst) worst = sys->distance(w, x, y);
        EXPECT_LE(worst, delta[w]);
        EXPECT_EQ(diameter(*sys, w, t), worst);
      }
  }
}

// min over labelings of cells into q-slots or padding, straight enumeration.
Rational containment_oracle(const RandomCover& p, const RandomCover& q, const FiberedMeasure& mu) {
  const BundleRDS& rds = *mu.system();
  std::size_t k = p.size(), slots = q.size() + 1;
  std::vector<std::size_t> label(k, 0);
  std::optional<Rational> best;
  while (true) {
    Rational cost = 0;
    for (std::size_t w = 0; w < rds.num_fibers(); ++w)
      for (std::size_t x = 0; x < rds.fiber_size(w); ++x) {
        std::size_t cell = 0;
        while (!p.elements[cell][w].contains(x)) ++cell;
        std::size_t j = label[cell];
        // x lies in R_j; it is misplaced unless j > 0 and Q_{j-1} holds x,
        // and it is missed by every other Q_i that holds it.
        for (std::size_t i = 0; i < q.size(); ++i) {
          bool in_q = q.elements[i][w].contains(x);
          bool in_r = j == i + 1;
          if (in_q != in_r) cost += mu.at(w, x);
        }
        if (j == 0) cost += mu.at(w, x);
      }
    if (!best || cost < *best) best = cost;
    std::size_t i = 0;
    while (i < k && ++label[i] == slots) label[i++] = 0;
    if (i == k) break;
  }
  return *best;
}

TEST(DeltaContainment, HandComputedCase) {
  SystemPtr a = sys_a();
  FiberedMeasure mu = FiberedMeasure::uniform(a);
  RandomCover q = cover_from_masks(a, {{0b01, 0b01}, {0b10, 0b10}});
  DeltaContainment d = delta_contains(fiber_partition(a), q, mu, Rational(1, 2));
  // Either matching of the two fiber cells misplaces half the mass twice.
  EXPECT_EQ(d.optimum, Rational(1));
  EXPECT_FALSE(d.contains);
  EXPECT_TRUE(delta_contains(singleton_partition(a), q, mu, Rational(1, 100)).contains);
}

TEST(DeltaContainment, MatchesEnumeration) {
  for (std::size_t trial = 0; trial < 40; ++trial) {
    TrialRng rng(3, trial);
    SystemShape shape;
    shape.max_fiber = 4;
    shape.max_omega = 2;
    SystemPtr sys = random_system(rng, shape);
    RandomCover p = random_partition(rng, sys, 4, "p");
    RandomCover q = random_partition(rng, sys, 3, "q");
    if (p.size() > 6 || q.size() > 4) continue;
    FiberedMeasure mu = random_measure(rng, sys);
    DeltaContainment d = delta_contains(p, q, mu, Rational(1, 3));
    EXPECT_EQ(d.optimum, containment_oracle(p, q, mu)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace tailent

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

#include <cmath>

#include "helpers.hpp"
#include "tailent/catalog.hpp"
#include "tailent/errors.hpp"
#include "tailent/invariant.hpp"
#include "tailent/measures.hpp"
#include "tailent/verify.hpp"

namespace tailent {
namespace {

TEST(Entropy, UniformSysA) {
  SystemPtr a = sys_a();
  FiberedMeasure mu = FiberedMeasure::uniform(a);
  EXPECT_NEAR(conditional_entropy(mu, singleton_partition(a), trivial_cover(a)), std::log(4.0), 1e-12);
  EXPECT_NEAR(conditional_entropy(mu, singleton_partition(a), fiber_partition(a)), std::log(2.0), 1e-12);
  EXPECT_NEAR(conditional_entropy(mu, fiber_partition(a), singleton_partition(a)), 0.0, 1e-15);
  EXPECT_NEAR(fiber_entropy_integral(mu, singleton_partition(a)), std::log(2.0), 1e-12);
}

TEST(Entropy, MatchesDefinitionOnRandomPartitions) {
  for (std::size_t trial = 0; trial < 60; ++trial) {
    TrialRng rng(21, trial);
    SystemPtr sys = random_system(rng);
    RandomCover r = random_partition(rng, sys, 4, "r");
    RandomCover s = random_partition(rng, sys, 3, "s");
    FiberedMeasure mu = random_measure(rng, sys);
    EXPECT_NEAR(conditional_entropy(mu, r, s), testing::conditional_entropy_oracle(mu, r, s), 1e-12);
  }
}

TEST(Entropy, RelativeSequenceOnCycle) {
  SystemPtr b = sys_b();
  FiberedMeasure mu = FiberedMeasure::uniform(b);
  RandomCover halves = testing::cover_from_masks(b, {{0b0011}, {0b1100}});
  EntropyEstimate e = relative_entropy_sequence(mu, halves, trivial_cover(b), 4);
  // Itineraries of {p0,p1},{p2,p3} separate all four points from n = 2.
  EXPECT_NEAR(e.a[0], std::log(2.0), 1e-12);
  EXPECT_NEAR(e.a[1], std::log(4.0), 1e-12);
  EXPECT_NEAR(e.a[3], std::log(4.0), 1e-12);
}

TEST(Entropy, SlackChecksHold) {
  for (std::size_t trial = 0; trial < 40; ++trial) {
    TrialRng rng(23, trial);
    SystemPtr sys = random_system(rng);
    RandomCover r = random_partition(rng, sys, 4, "r");
    RandomCover q = random_partition(rng, sys, 3, "q");
    // The conditioning algebra must contain the fiber algebra.
    RandomCover s = join(random_partition(rng, sys, 3, "s"), fiber_partition(sys));
    FiberedMeasure mu = random_measure(rng, sys);
    EXPECT_TRUE(lemlog_check(mu, r, q).holds) << trial;
    EXPECT_TRUE(lem3_check(mu, r, q, s).holds) << trial;
  }
}

TEST(Entropy, ContainmentBoundBothSigns) {
  SystemPtr a = sys_a();
  FiberedMeasure mu = FiberedMeasure::uniform(a);
  RandomCover q = testing::cover_from_masks(a, {{0b01, 0b01}, {0b10, 0b10}});
  Lem415Check c = lem415_bound_check(mu, singleton_partition(a), q, Rational(1, 10));
  EXPECT_TRUE(c.containment.contains);
  EXPECT_TRUE(c.holds_corrected);
  double d = 0.1, k = 2;
  EXPECT_NEAR(c.corrected_bound, -d * std::log(d) - (1 - d) * std::log(1 - d) + d * std::log(k), 1e-12);
  EXPECT_NEAR(c.printed_bound, -d * std::log(d) + (1 - d) * std::log(1 - d) + d * std::log(k), 1e-12);
  EXPECT_THROW(lem415_bound_check(mu, singleton_partition(a), q, Rational(1)), PreconditionFailed);
  EXPECT_THROW(lem415_bound_check(mu, fiber_partition(a), q, Rational(1, 10)), PreconditionFailed);
}

TEST(Entropy, FiltrationLimit) {
  SystemPtr b = sys_b();
  FiberedMeasure mu = FiberedMeasure::uniform(b);
  RandomCover halves = testing::cover_from_masks(b, {{0b0011}, {0b1100}});
  std::vector<SigmaAlgebra> chain = {trivial_cover(b), halves, singleton_partition(b)};
  FiltrationCheck f = filtration_limit_check(mu, singleton_partition(b), chain, singleton_partition(b));
  EXPECT_TRUE(f.holds());
  EXPECT_NEAR(f.values[0], std::log(4.0), 1e-12);
  EXPECT_NEAR(f.values[1], std::log(2.0), 1e-12);
}

TEST(Measures, PushforwardKeepsFiberMass) {
  auto ext = extension_examples();
  for (const auto& e : ext) {
    FiberedMeasure mu = FiberedMeasure::uniform(e.pi.source());
    FiberedMeasure nu = pushforward_measure(e.pi, mu);
    for (std::size_t w = 0; w < nu.system()->num_fibers(); ++w)
      EXPECT_EQ(nu.fiber_mass(w), e.pi.target()->base().prob(w));
  }
}

TEST(Measures, SigmaAlgebraRelations) {
  SystemPtr a = sys_a();
  EXPECT_TRUE(sigma_refines(singleton_partition(a), fiber_partition(a)));
  EXPECT_FALSE(sigma_refines(fiber_partition(a), singleton_partition(a)));
  EXPECT_TRUE(sigma_backward_invariant(fiber_partition(a)));
}

TEST(Measures, DefectVanishesOnInvariantFamily) {
  SystemPtr b = sys_b();
  FiberedMeasure m = FiberedMeasure::uniform(b);
  std::vector<FiberedMeasure> family = {m};
  DefectReport r = defect(m, trivial_cover(b), family, Rational(1, 10), 4);
  EXPECT_EQ(r.asymptotic, 0.0);
  EXPECT_EQ(r.truncated, 0.0);
  EXPECT_EQ(r.neighbors, 1u);
}

}  // namespace
}  // namespace tailent

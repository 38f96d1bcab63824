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
#include "tailent/errors.hpp"
#include "tailent/invariant.hpp"
#include "tailent/measures.hpp"
#include "tailent/verify.hpp"

namespace tailent {
namespace {

FiberedMeasure point_mass(const SystemPtr& sys, std::size_t w, std::size_t i) {
  FiberedMeasure mu(sys);
  mu.at(w, i) = sys->base().prob(w);
  return mu;
}

TEST(Invariant, SysAHasOneVertex) {
  SystemPtr a = sys_a();
  InvariantPolytope poly = vertex_enumeration(a);
  ASSERT_EQ(poly.vertices.size(), 1u);
  const FiberedMeasure& v = poly.vertices[0];
  EXPECT_EQ(v.at(0, 0), Rational(1, 2));  // a
  EXPECT_EQ(v.at(0, 1), Rational(0));
  EXPECT_EQ(v.at(1, 0), Rational(1, 2));  // c
  EXPECT_EQ(v.at(1, 1), Rational(0));
}

TEST(Invariant, SysBHasUniformVertex) {
  SystemPtr b = sys_b();
  InvariantPolytope poly = vertex_enumeration(b);
  ASSERT_EQ(poly.vertices.size(), 1u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(poly.vertices[0].at(0, i), Rational(1, 4));
}

TEST(Invariant, PairOfCycleHasFourVertices) {
  InvariantPolytope poly = vertex_enumeration(pair_system(sys_b()));
  EXPECT_EQ(poly.vertices.size(), 4u);
  for (const auto& v : poly.vertices) EXPECT_EQ(invariance_defect(v), Rational(0));
}

TEST(Invariant, VertexBudget) {
  Budget tight;
  tight.vertex_max_points = 3;
  EXPECT_THROW(vertex_enumeration(sys_b(), tight), BudgetExceeded);
}

TEST(Cesaro, PointMassOnCycle) {
  SystemPtr b = sys_b();
  FiberedMeasure d = point_mass(b, 0, 0);
  EXPECT_EQ(invariance_defect(d), Rational(2));
  FiberedMeasure avg = cesaro_average(d, 4);
  FiberedMeasure lim = cesaro_limit(d);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(avg.at(0, i), Rational(1, 4));
    EXPECT_EQ(lim.at(0, i), Rational(1, 4));
  }
  EXPECT_EQ(invariance_defect(lim), Rational(0));
}

TEST(Cesaro, LimitIsInvariantOnRandomSystems) {
  for (std::size_t trial = 0; trial < 50; ++trial) {
    TrialRng rng(31, trial);
    SystemPtr sys = random_system(rng);
    FiberedMeasure nu = random_measure(rng, sys);
    FiberedMeasure m = cesaro_limit(nu);
    EXPECT_EQ(invariance_defect(m), Rational(0));
    EXPECT_EQ(push_forward_step(m), m);
    for (std::size_t w = 0; w < sys->num_fibers(); ++w) EXPECT_EQ(m.fiber_mass(w), sys->base().prob(w));
  }
}

TEST(Lift, ExtensionExamples) {
  for (const auto& e : extension_examples()) {
    InvariantPolytope poly = vertex_enumeration(e.pi.target());
    LiftResult lift = lift_invariant(e.pi, poly.vertices[0]);
    EXPECT_TRUE(lift.invariant) << e.name;
    EXPECT_TRUE(lift.projects) << e.name;
    EXPECT_EQ(pushforward_measure(e.pi, lift.lifted), poly.vertices[0]);
  }
  const auto& pi = extension_examples()[1].pi;
  EXPECT_THROW(lift_invariant(pi, FiberedMeasure::uniform(pi.target())), PreconditionFailed);
}

TEST(Hull, MembershipCertificates) {
  SystemPtr p = pair_system(sys_b());
  InvariantPolytope poly = vertex_enumeration(p);
  FiberedMeasure mid = mix(Rational(1, 3), poly.vertices[0], poly.vertices[2]);
  HullCertificate c = convex_hull_membership(poly, mid);
  ASSERT_TRUE(c.member);
  FiberedMeasure rebuilt(p);
  for (std::size_t k = 0; k < poly.vertices.size(); ++k)
    for (std::size_t i = 0; i < p->fiber_size(0); ++i) rebuilt.at(0, i) += c.weights[k] * poly.vertices[k].at(0, i);
  EXPECT_EQ(rebuilt, mid);
  EXPECT_FALSE(convex_hull_membership(poly, point_mass(p, 0, 1)).member);
}

TEST(Bowen, BallOnSysA) {
  SystemPtr a = sys_a();
  std::vector<Rational> one = {Rational(1), Rational(1)};
  PointSet ball = bowen_ball(*a, 0, 0, 2, one);
  EXPECT_EQ(ball.members(), (std::vector<std::size_t>{0}));
  std::vector<Rational> wide = {Rational(2), Rational(2)};
  EXPECT_EQ(bowen_ball(*a, 0, 0, 2, wide).count(), 2u);
  // a and b meet at c after one step.
  EXPECT_EQ(bowen_distance(*a, 0, 0, 1, 1, one), Rational(1));
  EXPECT_EQ(bowen_distance(*a, 1, 0, 1, 2, one), Rational(1));
}

TEST(Bowen, DistanceMatchesOrbitOracle) {
  for (std::size_t trial = 0; trial < 30; ++trial) {
    TrialRng rng(37, trial);
    SystemPtr sys = random_system(rng);
    std::vector<Rational> delta(sys->num_fibers(), Rational(3, 2));
    for (std::size_t w = 0; w < sys->num_fibers(); ++w)
      for (std::size_t x = 0; x < sys->fiber_size(w); ++x)
        for (std::size_t y = 0; y < sys->fiber_size(w); ++y) {
          Rational want = 0;
          std::size_t v = w;
          for (std::size_t k = 0; k < 3; ++k) {
            Rational d = sys->distance(v, testing::orbit_point(*sys, w, x, k), testing::orbit_point(*sys, w, y, k)) / delta[v];
            if (d > want) want = d;
            v = sys->base().theta(v);
          }
          EXPECT_EQ(bowen_distance(*sys, w, x, y, 3, delta), want);
        }
  }
}

TEST(Lebesgue, TwoCellsAndFullTrace) {
  SystemPtr b = sys_b();
  std::vector<PointSet> halves = {PointSet(4), PointSet(4)};
  halves[0].insert(0);
  halves[0].insert(1);
  halves[1].insert(2);
  halves[1].insert(3);
  EXPECT_EQ(lebesgue_number(*b, 0, halves), std::optional<Rational>(Rational(1)));
  EXPECT_FALSE(lebesgue_number(*b, 0, {PointSet::full(4)}).has_value());
}

TEST(Separated, SysASingletons) {
  SystemPtr a = sys_a();
  std::vector<Rational> one = {Rational(1), Rational(1)};
  SeparatedEmpirical se = separated_empirical(singleton_partition(a), singleton_partition(a), 2, one);
  EXPECT_TRUE(se.mu_n_support_ok);
  for (const auto& f : se.fibers) {
    EXPECT_TRUE(f.spanning);
    EXPECT_TRUE(f.card_ok);
    if (f.gate) EXPECT_GE(f.separated.size(), f.count);
  }
  auto bare = std::make_shared<const BundleRDS>(sys_b()->base(), std::make_shared<const MetricSpace>(
                                                                      std::vector<std::string>{"x"}),
                                                std::vector<std::vector<std::size_t>>{{0}},
                                                std::vector<std::vector<std::size_t>>{{0}});
  EXPECT_THROW(separated_empirical(singleton_partition(bare), singleton_partition(bare), 1, {Rational(1)}),
               PreconditionFailed);
}

TEST(Diagonal, SysBCycle) {
  SystemPtr b = sys_b();
  DiagonalMeasure dm = diagonal_measure({singleton_partition(b)}, {singleton_partition(b)}, 2, {Rational(1)}, 4);
  EXPECT_TRUE(dm.invariant);
  EXPECT_TRUE(dm.diagonal_expected);
  EXPECT_TRUE(dm.on_diagonal);
  for (double v : dm.b) EXPECT_EQ(v, 0.0);
  SystemPtr pair = dm.m.system();
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 4; ++x)
      if (x != y) EXPECT_EQ(dm.m.at(0, y * 4 + x), Rational(0));
}

}  // namespace
}  // namespace tailent

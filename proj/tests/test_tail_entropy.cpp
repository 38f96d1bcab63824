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
#include "tailent/tail_entropy.hpp"
#include "tailent/verify.hpp"

namespace tailent {
namespace {

TEST(Fekete, Bookkeeping) {
  EntropyEstimate e = estimate_from_sequence({2, 3, 4});
  EXPECT_EQ(e.n_reached, 3u);
  EXPECT_DOUBLE_EQ(e.ratios[1], 1.5);
  EXPECT_DOUBLE_EQ(e.running_inf[2], 4.0 / 3.0);
  EXPECT_TRUE(e.subadditive);
  EntropyEstimate bad = estimate_from_sequence({1, 3});
  EXPECT_FALSE(bad.subadditive);
  EXPECT_DOUBLE_EQ(bad.max_subadditivity_excess, 1.0);
  EXPECT_DOUBLE_EQ(bad.upper_bracket(), 1.0);
}

TEST(TailEntropy, SysARunningInfimum) {
  SystemPtr a = sys_a();
  EntropyEstimate e = tail_entropy_estimate(singleton_partition(a), trivial_cover(a), 8);
  ASSERT_EQ(e.n_reached, 8u);
  for (double v : e.a) EXPECT_NEAR(v, std::log(2.0), 1e-12);
  EXPECT_NEAR(e.upper_bracket(), std::log(2.0) / 8, 1e-12);
  ASSERT_TRUE(e.certified_limit.has_value());
  EXPECT_EQ(*e.certified_limit, 0.0);
  EXPECT_FALSE(e.truncated);
}

TEST(TailEntropy, IntegratedLogCountOracle) {
  for (std::size_t trial = 0; trial < 30; ++trial) {
    TrialRng rng(5, trial);
    SystemPtr sys = random_system(rng);
    RandomCover r = random_cover(rng, sys, 1, 4, "r");
    RandomCover q = random_cover(rng, sys, 1, 3, "q");
    for (std::size_t n = 1; n <= 3; ++n) {
      double want = 0;
      for (std::size_t w = 0; w < sys->num_fibers(); ++w)
        want += to_double(sys->base().prob(w)) *
                std::log(static_cast<double>(testing::relative_count_oracle(r, q, w, n)));
      EXPECT_NEAR(integrated_log_count(r, q, n), want, 1e-12);
    }
  }
}

TEST(TailEntropy, TruncatedPrefixOnBudget) {
  SystemPtr b = sys_b();
  RandomCover halves = testing::cover_from_masks(b, {{0b0011}, {0b1100}});
  Budget tight;
  tight.max_cover_elements = 2;
  EntropyEstimate e = tail_entropy_estimate(halves, trivial_cover(b), 6, tight);
  EXPECT_TRUE(e.truncated);
  EXPECT_EQ(e.n_reached, 1u);
  EXPECT_NEAR(e.a[0], std::log(2.0), 1e-12);
  tight.max_cover_elements = 1;
  EXPECT_THROW(tail_entropy_estimate(halves, trivial_cover(b), 6, tight), BudgetExceeded);
}

TEST(TailEntropy, TotalIsMinOverQOfMaxOverR) {
  SystemPtr a = sys_a();
  std::vector<RandomCover> qs = {trivial_cover(a), singleton_partition(a)};
  std::vector<RandomCover> rs = {trivial_cover(a), singleton_partition(a)};
  TailValue v = tail_entropy_total(qs, rs, 8);
  EXPECT_EQ(v.truncated, 0.0);
  ASSERT_TRUE(v.certified.has_value());
  EXPECT_EQ(*v.certified, 0.0);
  std::vector<RandomCover> only_trivial = {trivial_cover(a)};
  TailValue w = tail_entropy_total(only_trivial, rs, 8);
  EXPECT_NEAR(w.truncated, std::log(2.0) / 8, 1e-12);
  TailValue c = cover_conditional_entropy(trivial_cover(a), rs, 8);
  EXPECT_NEAR(c.truncated, w.truncated, 1e-15);
}

TEST(PowerRule, SysAAndRandomCovers) {
  SystemPtr a = sys_a();
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 2; ++n)
      EXPECT_TRUE(power_rule_check(singleton_partition(a), trivial_cover(a), m, n).holds);
  for (std::size_t trial = 0; trial < 20; ++trial) {
    TrialRng rng(17, trial);
    SystemPtr sys = random_system(rng);
    RandomCover r = random_cover(rng, sys, 1, 3, "r");
    RandomCover q = random_cover(rng, sys, 1, 3, "q");
    PowerRuleResult p = power_rule_check(r, q, 2, 2);
    EXPECT_TRUE(p.holds) << trial;
    for (std::size_t w = 0; w < sys->num_fibers(); ++w)
      EXPECT_EQ(p.direct[w], testing::relative_count_oracle(r, q, w, 4));
  }
}

}  // namespace
}  // namespace tailent

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

#include "tailent/catalog.hpp"
#include "tailent/verify.hpp"

namespace tailent {
namespace {

TEST(TrialRng, BoundsAndStreams) {
  TrialRng a(1, 2), b(1, 2), c(1, 3);
  bool differs = false;
  for (int i = 0; i < 200; ++i) {
    std::size_t x = a.below(7);
    EXPECT_LT(x, 7u);
    EXPECT_EQ(x, b.below(7));
    differs |= x != c.below(7);
    std::size_t y = a.between(3, 5);
    b.between(3, 5);
    EXPECT_GE(y, 3u);
    EXPECT_LE(y, 5u);
  }
  EXPECT_TRUE(differs);
}

TEST(Generators, ProduceValidObjects) {
  for (std::size_t t = 0; t < 50; ++t) {
    TrialRng rng(9, t);
    SystemPtr sys = random_system(rng);
    EXPECT_TRUE(validate_system(*sys).ok());
    EXPECT_TRUE(covers_every_fiber(random_cover(rng, sys, 1, 4, "c")));
    EXPECT_TRUE(is_partition(random_partition(rng, sys, 3, "p")));
    EXPECT_TRUE(random_measure(rng, sys).violations().empty());
  }
}

TEST(Suites, ReportsAreDeterministic) {
  for (const char* suite : {"cover", "power", "setcover", "entropy", "invariant", "construction"}) {
    SuiteReport a = run_suite(suite, 12, 8), b = run_suite(suite, 12, 8);
    EXPECT_EQ(a.to_json(), b.to_json()) << suite;
    EXPECT_TRUE(a.ok()) << a.to_text();
    EXPECT_EQ(a.digests.size(), b.digests.size());
  }
  EXPECT_NE(run_suite("cover", 1, 5).digests, run_suite("cover", 2, 5).digests);
}

TEST(Suites, TextEndsWithResult) {
  SuiteReport r = run_suite("setcover", 1, 5);
  std::string text = r.to_text();
  EXPECT_NE(text.find("result: PASS"), std::string::npos);
  EXPECT_THROW(run_suite("nope", 1, 1), std::exception);
}

TEST(Suites, FailuresBecomeCounterexamples) {
  SuiteReport r;
  r.suite = "x";
  CheckSummary c;
  c.name = "always";
  c.failed = 1;
  r.checks.push_back(c);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_EQ(r.find("always")->status(), CheckStatus::kFail);
  CheckSummary s;
  s.name = "never ran";
  s.skipped = 2;
  EXPECT_EQ(s.status(), CheckStatus::kSkipped);
}

TEST(Suites, PrincipalExtensions) {
  for (const auto& e : extension_examples()) {
    SuiteReport r = principal_extension_check(e.pi, 4, {}, e.name);
    EXPECT_TRUE(r.ok()) << r.to_text();
  }
}

}  // namespace
}  // namespace tailent

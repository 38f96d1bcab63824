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
#include "tailent/errors.hpp"
#include "tailent/scenario.hpp"

namespace tailent {
namespace {

const char* kSmall = R"({
  "version": 1,
  "driving": {"swap": {"prob": ["1/2", "1/2"], "theta": [1, 0]}},
  "systems": {
    "s": {"driving": "swap", "metric": "discrete",
          "fibers": [["a", "b"], ["c", "d"]],
          "maps": [{"a": "c", "b": "c"}, {"c": "a", "d": "b"}]}
  },
  "derived": {"h": {"op": "product", "first": "s", "second": "s"}},
  "factors": {"pi": {"op": "first", "of": "h"}},
  "covers": {
    "j": {"join": ["o", "t"]},
    "o": {"system": "s", "elements": [[["a"], ["c"]], [["a", "b"], ["c", "d"]]]},
    "t": {"builtin": "trivial", "system": "s"},
    "pre": {"preimage": {"factor": "pi", "cover": "o"}}
  },
  "measures": {"m": {"system": "s", "weights": [{"a": "1/2"}, {"c": "1/2"}]}}
})";

TEST(Scenario, ParsesAllSections) {
  Scenario s = parse_scenario(kSmall);
  EXPECT_EQ(s.system("s")->fiber_size(0), 2u);
  EXPECT_EQ(s.system("h")->fiber_size(0), 4u);
  EXPECT_EQ(s.cover("j").size(), 2u);
  EXPECT_EQ(s.cover("pre").system, s.system("h"));
  EXPECT_EQ(s.measure("m").at(0, 0), Rational(1, 2));
  EXPECT_THROW(s.cover("missing"), UnknownName);
}

TEST(Scenario, DumpRoundTrip) {
  Scenario s = parse_scenario(kSmall);
  std::string once = dump_scenario(s);
  Scenario t = parse_scenario(once);
  EXPECT_EQ(dump_scenario(t), once);
  EXPECT_EQ(t.measure("m").weights(), s.measure("m").weights());
}

TEST(Scenario, Errors) {
  EXPECT_THROW(parse_scenario("{"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"version": 7})"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"systems": {"s": {"driving": "nope", "fibers": [], "maps": []}}})"), UnknownName);
  try {
    parse_scenario(R"({
      "driving": {"d": {"prob": ["2/3", "1/3"], "theta": [1, 0]}},
      "systems": {"s": {"driving": "d", "fibers": [["a"], ["b"]], "maps": [{"a": "b"}, {"b": "a"}]}}
    })");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("theta-invariance"), std::string::npos);
  }
  EXPECT_THROW(parse_scenario(R"({"covers": {"x": {"join": ["y"]}, "y": {"join": ["x"]}}})"), UnknownName);
}

TEST(Scenario, FilesInRepository) {
  for (const char* f : {"sys_a.json", "sys_b.json", "shifts.json"})
    EXPECT_NO_THROW(load_scenario(std::string(TAILENT_SCENARIO_DIR) + "/" + f)) << f;
  EXPECT_THROW(load_scenario("/nonexistent/x.json"), Error);
}

}  // namespace
}  // namespace tailent

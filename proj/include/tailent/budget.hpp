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

#ifndef TAILENT_BUDGET_HPP_
#define TAILENT_BUDGET_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace tailent {

// Desk-scale caps. Exceeding any of them raises BudgetExceeded; results are
// never silently truncated.
struct Budget {
  // Distinct nonempty traces of an iterated cover on one fiber.
  std::size_t max_cover_elements = 4096;
  // Cells of the finer partition in a delta-containment search.
  std::size_t delta_max_cells = 8;
  // Elements of the target partition in a delta-containment search.
  std::size_t delta_max_targets = 4;
  // Total number of points |E| for invariant-polytope vertex enumeration.
  std::size_t vertex_max_points = 24;
  // Admissible words materialized by brute-force symbolic enumeration.
  std::size_t sft_max_words = 4096;

  // Applies "key=value,key=value" overrides. Unknown keys throw ParseError.
  void apply_overrides(std::string_view spec);

  // Defaults overridden by the TAILENT_BUDGETS environment variable, if set.
  static Budget from_environment();

  std::string to_string() const;
};

inline constexpr double kTolerance = 1e-9;

}  // namespace tailent

#endif  // TAILENT_BUDGET_HPP_

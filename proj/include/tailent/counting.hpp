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

// Exact minimal-subcover counts N(S, R)(w) and N(R | Q)(w).

#ifndef TAILENT_COUNTING_HPP_
#define TAILENT_COUNTING_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tailent/budget.hpp"
#include "tailent/covers.hpp"
#include "tailent/point_set.hpp"

namespace tailent {

// Minimum number of members of `family` whose union contains `target`; 1 when
// `target` is empty. Branch and bound with a greedy incumbent and removal of
// dominated members. Throws DomainError if the family cannot cover `target`.
std::size_t min_cover_size(const PointSet& target, std::span<const PointSet> family);

// N(S, R)(w).
std::size_t minimal_subcover(const RandomSet& s, const RandomCover& r, std::size_t omega);

// N(R | Q)(w) = max over Q in q of N(Q, R)(w).
std::size_t relative_count(const RandomCover& r, const RandomCover& q, std::size_t omega);

// N(R | Q) = max over w.
std::size_t relative_count_max(const RandomCover& r, const RandomCover& q);

struct CountProfile {
  std::size_t depth = 0;
  std::string r_label;
  std::string q_label;
  std::vector<std::size_t> counts;  // N(R^(n) | Q^(n))(w) per w
};

// N(R^(n) | Q^(n))(w) from memoized trace families. Reuse one engine to sweep n.
class CountEngine {
 public:
  CountEngine(const RandomCover& r, const RandomCover& q, const Budget& budget = {});

  // Throws BudgetExceeded with the deepest complete level.
  std::size_t count(std::size_t omega, std::size_t n);
  CountProfile profile(std::size_t n);

 private:
  IteratedTraces r_;
  IteratedTraces q_;
};

CountProfile count_profile(const RandomCover& r, const RandomCover& q, std::size_t n,
                           const Budget& budget = {});

}  // namespace tailent

#endif  // TAILENT_COUNTING_HPP_

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

#include "tailent/counting.hpp"

#include <algorithm>
#include <limits>

#include "tailent/errors.hpp"

namespace tailent {
namespace {

struct CoverSearch {
  std::vector<PointSet> sets;
  std::size_t best;

  void run(const PointSet& uncovered, std::size_t used) {
    if (uncovered.empty()) {
      best = std::min(best, used);
      return;
    }
    if (used + 1 >= best) return;
    std::size_t largest = 0;
    for (const auto& s : sets) largest = std::max(largest, (s & uncovered).count());
    std::size_t remaining = uncovered.count();
    if (used + (remaining + largest - 1) / largest >= best) return;
    // Branch on the uncovered point with the fewest covering sets.
    std::size_t pivot = 0, fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t x : uncovered.members()) {
      std::size_t c = 0;
      for (const auto& s : sets)
        if (s.contains(x)) ++c;
      if (c < fewest) {
        fewest = c;
        pivot = x;
      }
    }
    std::vector<const PointSet*> options;
    for (const auto& s : sets)
      if (s.contains(pivot)) options.push_back(&s);
    std::stable_sort(options.begin(), options.end(), [&](const PointSet* a, const PointSet* b) {
      return (*a & uncovered).count() > (*b & uncovered).count();
    });
    for (const PointSet* s : options) run(uncovered - *s, used + 1);
  }
};

}  // namespace

std::size_t min_cover_size(const PointSet& target, std::span<const PointSet> family) {
  if (target.empty()) return 1;
  std::vector<PointSet> sets;
  PointSet reach(target.universe());
  for (const auto& f : family) {
    PointSet s = f & target;
    if (s.empty()) continue;
    reach |= s;
    sets.push_back(std::move(s));
  }
  if (!target.subset_of(reach)) throw DomainError("set is not covered by the cover's elements");
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  // Drop members contained in another member.
  std::vector<PointSet> kept;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < sets.size() && !dominated; ++b)
      dominated = b != a && sets[a].subset_of(sets[b]);
    if (!dominated) kept.push_back(sets[a]);
  }
  std::size_t greedy = 0;
  PointSet left = target;
  while (!left.empty()) {
    const PointSet* pick = &kept.front();
    std::size_t gain = 0;
    for (const auto& s : kept) {
      std::size_t g = (s & left).count();
      if (g > gain) {
        gain = g;
        pick = &s;
      }
    }
    left -= *pick;
    ++greedy;
  }
  CoverSearch search{std::move(kept), greedy};
  search.run(target, 0);
  return search.best;
}

std::size_t minimal_subcover(const RandomSet& s, const RandomCover& r, std::size_t omega) {
  if (omega >= r.system->num_fibers()) throw DomainError("base point out of range");
  if (s.size() != r.system->num_fibers() || s[omega].universe() != r.system->fiber_size(omega))
    throw DomainError("random set does not match the cover's system");
  return min_cover_size(s[omega], fiber_traces(r, omega));
}

std::size_t relative_count(const RandomCover& r, const RandomCover& q, std::size_t omega) {
  if (r.system != q.system) throw IncompatibleSystems("covers live on different systems");
  auto family = fiber_traces(r, omega);
  std::size_t best = 1;
  for (const auto& t : fiber_traces(q, omega)) best = std::max(best, min_cover_size(t, family));
  return best;
}

std::size_t relative_count_max(const RandomCover& r, const RandomCover& q) {
  std::size_t best = 1;
  for (std::size_t w = 0; w < r.system->num_fibers(); ++w) best = std::max(best, relative_count(r, q, w));
  return best;
}

CountEngine::CountEngine(const RandomCover& r, const RandomCover& q, const Budget& budget)
    : r_(r, budget), q_(q, budget) {
  if (r.system != q.system) throw IncompatibleSystems("covers live on different systems");
}

std::size_t CountEngine::count(std::size_t omega, std::size_t n) {
  const auto& family = r_.at(omega, n);
  const auto& targets = q_.at(omega, n);
  std::size_t best = 1;
  for (const auto& t : targets) best = std::max(best, min_cover_size(t, family));
  return best;
}

CountProfile CountEngine::profile(std::size_t n) {
  CountProfile p;
  p.depth = n;
  p.r_label = r_.cover().label;
  p.q_label = q_.cover().label;
  for (std::size_t w = 0; w < r_.cover().system->num_fibers(); ++w) p.counts.push_back(count(w, n));
  return p;
}

CountProfile count_profile(const RandomCover& r, const RandomCover& q, std::size_t n,
                           const Budget& budget) {
  CountEngine engine(r, q, budget);
  return engine.profile(n);
}

}  // namespace tailent

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

#include "tailent/covers.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>

#include "tailent/errors.hpp"

namespace tailent {
namespace {

void require_same_system(const RandomCover& a, const RandomCover& b) {
  if (a.system != b.system) throw IncompatibleSystems("covers live on different systems");
}

void dedupe_nonempty(std::vector<RandomSet>& elements) {
  std::vector<RandomSet> out;
  out.reserve(elements.size());
  for (auto& e : elements) {
    if (is_empty(e)) continue;
    if (std::find(out.begin(), out.end(), e) != out.end()) continue;
    out.push_back(std::move(e));
  }
  elements = std::move(out);
}

// {x in E_w : T_w x in b}, b a subset of E_{theta w}.
PointSet preimage_step(const BundleRDS& rds, std::size_t omega, const PointSet& b) {
  PointSet out(rds.fiber_size(omega));
  for (std::size_t i = 0; i < rds.fiber_size(omega); ++i) {
    std::size_t j = rds.next(omega, i);
    if (j != kNoPoint && b.contains(j)) out.insert(i);
  }
  return out;
}

RandomCover coordinate_partition(const SystemPtr& product, bool first) {
  if (!product->product())
    throw PreconditionFailed("product", "system was not built as a product or pair system");
  const auto& ps = *product->product();
  std::vector<RandomSet> elements;
  for (std::size_t w = 0; w < product->num_fibers(); ++w) {
    std::size_t ny = ps.first->fiber_size(w);
    std::size_t nx = ps.second->fiber_size(w);
    std::size_t groups = first ? ny : nx;
    for (std::size_t g = 0; g < groups; ++g) {
      RandomSet s = empty_set(*product);
      for (std::size_t k = 0; k < ny * nx; ++k)
        if ((first ? k / nx : k % nx) == g) s[w].insert(k);
      elements.push_back(std::move(s));
    }
  }
  return make_cover(product, std::move(elements), first ? "@first" : "@second");
}

}  // namespace

RandomSet empty_set(const BundleRDS& rds) {
  RandomSet s;
  s.reserve(rds.num_fibers());
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) s.emplace_back(rds.fiber_size(w));
  return s;
}

RandomSet full_set(const BundleRDS& rds) {
  RandomSet s;
  s.reserve(rds.num_fibers());
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) s.push_back(PointSet::full(rds.fiber_size(w)));
  return s;
}

bool is_empty(const RandomSet& s) {
  return std::all_of(s.begin(), s.end(), [](const PointSet& p) { return p.empty(); });
}

Rational measure_of(const FiberedMeasure& mu, const RandomSet& s) {
  Rational total = 0;
  for (std::size_t w = 0; w < s.size(); ++w)
    for (std::size_t i : s[w].members()) total += mu.at(w, i);
  return total;
}

bool covers_every_fiber(const RandomCover& c) {
  const BundleRDS& rds = *c.system;
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    PointSet u(rds.fiber_size(w));
    for (const auto& e : c.elements) u |= e[w];
    if (u.count() != rds.fiber_size(w)) return false;
  }
  return true;
}

bool is_partition(const RandomCover& c) {
  if (!covers_every_fiber(c)) return false;
  const BundleRDS& rds = *c.system;
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    PointSet seen(rds.fiber_size(w));
    for (const auto& e : c.elements) {
      if (seen.intersects(e[w])) return false;
      seen |= e[w];
    }
  }
  return true;
}

void require_cover(const RandomCover& c) {
  if (!covers_every_fiber(c)) throw ValidationError("'" + c.label + "' does not cover every fiber");
}

void require_partition(const RandomCover& c) {
  if (!is_partition(c)) throw ValidationError("'" + c.label + "' is not a partition");
}

RandomCover make_cover(SystemPtr system, std::vector<RandomSet> elements, std::string label) {
  for (const auto& e : elements) {
    if (e.size() != system->num_fibers()) throw ValidationError("random set has wrong fiber count");
    for (std::size_t w = 0; w < e.size(); ++w)
      if (e[w].universe() != system->fiber_size(w))
        throw ValidationError("random set section does not match fiber " + std::to_string(w));
  }
  RandomCover c{std::move(system), std::move(elements), std::move(label)};
  require_cover(c);
  return c;
}

RandomCover trivial_cover(const SystemPtr& system) {
  return make_cover(system, {full_set(*system)}, "@trivial");
}

RandomCover singleton_partition(const SystemPtr& system) {
  std::vector<RandomSet> elements;
  for (std::size_t w = 0; w < system->num_fibers(); ++w)
    for (std::size_t i = 0; i < system->fiber_size(w); ++i) {
      RandomSet s = empty_set(*system);
      s[w].insert(i);
      elements.push_back(std::move(s));
    }
  return make_cover(system, std::move(elements), "@singletons");
}

RandomCover fiber_partition(const SystemPtr& system) {
  std::vector<RandomSet> elements;
  for (std::size_t w = 0; w < system->num_fibers(); ++w) {
    RandomSet s = empty_set(*system);
    s[w] = PointSet::full(system->fiber_size(w));
    elements.push_back(std::move(s));
  }
  return make_cover(system, std::move(elements), "@fiber");
}

RandomCover first_coordinate_partition(const SystemPtr& product) {
  return coordinate_partition(product, true);
}

RandomCover second_coordinate_partition(const SystemPtr& product) {
  return coordinate_partition(product, false);
}

RandomCover preimage_cover(const FactorMap& pi, const RandomCover& c) {
  if (c.system != pi.target()) throw IncompatibleSystems("cover is not on the factor's target");
  const BundleRDS& g = *pi.source();
  std::vector<RandomSet> elements;
  for (const auto& e : c.elements) {
    RandomSet s = empty_set(g);
    for (std::size_t w = 0; w < g.num_fibers(); ++w)
      for (std::size_t i = 0; i < g.fiber_size(w); ++i)
        if (e[w].contains(pi(w, i))) s[w].insert(i);
    elements.push_back(std::move(s));
  }
  return make_cover(pi.source(), std::move(elements), c.label.empty() ? "" : "pi^-1 " + c.label);
}

RandomCover factor_partition(const FactorMap& pi) {
  RandomCover c = preimage_cover(pi, singleton_partition(pi.target()));
  c.label = "@factor";
  return c;
}

RandomCover rehome(const RandomCover& c, const SystemPtr& system) {
  if (system->num_fibers() != c.system->num_fibers())
    throw IncompatibleSystems("rehome: fiber counts differ");
  for (std::size_t w = 0; w < system->num_fibers(); ++w)
    if (!std::equal(system->fiber(w).begin(), system->fiber(w).end(),
                    c.system->fiber(w).begin(), c.system->fiber(w).end()))
      throw IncompatibleSystems("rehome: fibers differ");
  return RandomCover{system, c.elements, c.label};
}

RandomCover join(const RandomCover& a, const RandomCover& b) {
  require_same_system(a, b);
  std::vector<RandomSet> elements;
  elements.reserve(a.size() * b.size());
  for (const auto& x : a.elements)
    for (const auto& y : b.elements) {
      RandomSet s = x;
      for (std::size_t w = 0; w < s.size(); ++w) s[w] &= y[w];
      elements.push_back(std::move(s));
    }
  dedupe_nonempty(elements);
  std::string label;
  if (!a.label.empty() && !b.label.empty()) label = a.label + " v " + b.label;
  return RandomCover{a.system, std::move(elements), std::move(label)};
}

RandomCover pullback(const RandomCover& q, std::size_t i) {
  if (i == 0) return q;
  const BundleRDS& rds = *q.system;
  std::vector<RandomSet> elements;
  for (const auto& e : q.elements) {
    RandomSet s = empty_set(rds);
    for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
      std::size_t target = rds.base().iterate(w, i);
      for (std::size_t x = 0; x < rds.fiber_size(w); ++x) {
        State st = skew_iterate(rds, {w, x}, i);
        if (e[target].contains(st.point)) s[w].insert(x);
      }
    }
    elements.push_back(std::move(s));
  }
  dedupe_nonempty(elements);
  return RandomCover{q.system, std::move(elements), q.label};
}

RandomCover iterate_cover(const RandomCover& q, std::size_t n, const Budget& budget) {
  if (n == 0) throw PreconditionFailed("depth", "iterate_cover needs n >= 1");
  RandomCover out = q;
  dedupe_nonempty(out.elements);
  for (std::size_t i = 1; i < n; ++i) {
    out = join(out, pullback(q, i));
    if (out.size() > budget.max_cover_elements)
      throw BudgetExceeded("iterated cover '" + q.label + "' exceeds " +
                               std::to_string(budget.max_cover_elements) + " elements at depth " +
                               std::to_string(i + 1),
                           i);
  }
  out.label = q.label;
  return out;
}

bool refines(const RandomCover& r, const RandomCover& q, RefinementMode mode) {
  require_same_system(r, q);
  std::size_t nw = r.system->num_fibers();
  for (const auto& a : r.elements) {
    if (mode == RefinementMode::kUniform) {
      bool found = std::any_of(q.elements.begin(), q.elements.end(), [&](const RandomSet& b) {
        for (std::size_t w = 0; w < nw; ++w)
          if (!a[w].subset_of(b[w])) return false;
        return true;
      });
      if (!found) return false;
    } else {
      for (std::size_t w = 0; w < nw; ++w) {
        bool found = std::any_of(q.elements.begin(), q.elements.end(),
                                 [&](const RandomSet& b) { return a[w].subset_of(b[w]); });
        if (!found) return false;
      }
    }
  }
  return true;
}

std::vector<PointSet> fiber_traces(const RandomCover& c, std::size_t omega) {
  std::vector<PointSet> out;
  for (const auto& e : c.elements)
    if (!e[omega].empty()) out.push_back(e[omega]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool same_traces(const RandomCover& a, const RandomCover& b) {
  if (a.system->num_fibers() != b.system->num_fibers()) return false;
  for (std::size_t w = 0; w < a.system->num_fibers(); ++w)
    if (fiber_traces(a, w) != fiber_traces(b, w)) return false;
  return true;
}

IteratedTraces::IteratedTraces(RandomCover cover, Budget budget)
    : cover_(std::move(cover)), budget_(budget) {
  std::vector<std::vector<PointSet>> first;
  for (std::size_t w = 0; w < cover_.system->num_fibers(); ++w) {
    first.push_back(fiber_traces(cover_, w));
    if (first.back().size() > budget_.max_cover_elements)
      throw BudgetExceeded("cover '" + cover_.label + "' exceeds the trace budget", 0);
  }
  levels_.push_back(std::move(first));
}

void IteratedTraces::extend() {
  const BundleRDS& rds = *cover_.system;
  const auto& base = levels_.front();
  const auto& prev = levels_.back();
  std::size_t depth = levels_.size() + 1;
  std::vector<std::vector<PointSet>> next(rds.num_fibers());
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    std::size_t tw = rds.base().theta(w);
    std::vector<PointSet> pre;
    pre.reserve(prev[tw].size());
    for (const auto& b : prev[tw]) pre.push_back(preimage_step(rds, w, b));
    auto& out = next[w];
    for (const auto& a : base[w])
      for (const auto& p : pre) {
        PointSet s = a & p;
        if (!s.empty()) out.push_back(std::move(s));
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > budget_.max_cover_elements)
      throw BudgetExceeded("iterate of '" + cover_.label + "' has " + std::to_string(out.size()) +
                               " traces on fiber " + std::to_string(w) + " at depth " +
                               std::to_string(depth) + " (budget " +
                               std::to_string(budget_.max_cover_elements) + ")",
                           depth - 1);
  }
  levels_.push_back(std::move(next));
}

const std::vector<PointSet>& IteratedTraces::at(std::size_t omega, std::size_t n) {
  if (n == 0) throw PreconditionFailed("depth", "trace depth must be >= 1");
  while (levels_.size() < n) extend();
  return levels_[n - 1][omega];
}

Rational diameter(const BundleRDS& rds, std::size_t omega, const PointSet& s) {
  Rational d = 0;
  auto m = s.members();
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b) d = std::max(d, rds.distance(omega, m[a], m[b]));
  return d;
}

SmallDiameterPartition small_diameter_partition(const SystemPtr& system,
                                                const std::vector<Rational>& delta,
                                                std::span<const FiberedMeasure> measures) {
  const BundleRDS& rds = *system;
  if (!rds.has_metric()) throw PreconditionFailed("metric", "small-diameter partition needs a metric");
  if (delta.size() != rds.num_fibers()) throw PreconditionFailed("delta", "one radius per fiber");
  for (const auto& mu : measures)
    if (mu.system() != system) throw IncompatibleSystems("measure on another system");
  std::vector<std::vector<PointSet>> cells(rds.num_fibers());
  std::size_t max_cells = 0;
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i) {
      bool placed = false;
      for (auto& c : cells[w]) {
        bool ok = true;
        for (std::size_t j : c.members())
          if (rds.distance(w, i, j) > delta[w]) ok = false;
        if (ok) {
          c.insert(i);
          placed = true;
          break;
        }
      }
      if (!placed) cells[w].push_back(PointSet::singleton(rds.fiber_size(w), i));
    }
    max_cells = std::max(max_cells, cells[w].size());
  }
  SmallDiameterPartition out;
  std::vector<RandomSet> elements;
  for (std::size_t k = 0; k < max_cells; ++k) {
    RandomSet s = empty_set(rds);
    for (std::size_t w = 0; w < rds.num_fibers(); ++w)
      if (k < cells[w].size()) s[w] = cells[w][k];
    elements.push_back(std::move(s));
  }
  out.partition = make_cover(system, std::move(elements), "small-diameter");
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    Rational d = 0;
    for (const auto& c : cells[w]) d = std::max(d, diameter(rds, w, c));
    out.max_diameter.push_back(d);
  }
  return out;
}

DeltaContainment delta_contains(const RandomCover& p, const RandomCover& q,
                                const FiberedMeasure& mu, const Rational& delta,
                                const Budget& budget) {
  require_same_system(p, q);
  if (mu.system() != p.system) throw IncompatibleSystems("measure on another system");
  require_partition(p);
  require_partition(q);
  if (delta <= 0) throw PreconditionFailed("delta", "delta must be positive");
  std::size_t cells = p.size();
  std::size_t k = q.size();
  if (cells > budget.delta_max_cells)
    throw BudgetExceeded("delta-containment: " + std::to_string(cells) + " cells exceed budget " +
                             std::to_string(budget.delta_max_cells),
                         0);
  if (k > budget.delta_max_targets)
    throw BudgetExceeded("delta-containment: " + std::to_string(k) + " targets exceed budget " +
                             std::to_string(budget.delta_max_targets),
                         0);
  // Sum of symmetric differences separates over cells:
  // 2 * sum_c (mu(c) - mu(c & Q_label(c))), with Q_0 empty.
  std::vector<std::vector<Rational>> cost(cells, std::vector<Rational>(k + 1));
  for (std::size_t c = 0; c < cells; ++c) {
    Rational mc = measure_of(mu, p.elements[c]);
    cost[c][0] = mc;
    for (std::size_t j = 0; j < k; ++j) {
      RandomSet inter = p.elements[c];
      for (std::size_t w = 0; w < inter.size(); ++w) inter[w] &= q.elements[j][w];
      cost[c][j + 1] = mc - measure_of(mu, inter);
    }
  }
  std::vector<std::vector<std::size_t>> order(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    order[c].resize(k + 1);
    std::iota(order[c].begin(), order[c].end(), 0);
    std::stable_sort(order[c].begin(), order[c].end(),
                     [&](std::size_t a, std::size_t b) { return cost[c][a] < cost[c][b]; });
  }
  std::optional<Rational> best;
  std::vector<std::size_t> best_labels, labels(cells, 0);
  // Depth-first over all (k+1)^cells labelings; branches that cannot beat the
  // incumbent are cut, which keeps the search exact.
  auto search = [&](auto&& self, std::size_t c, const Rational& partial) -> void {
    if (best && partial >= *best) return;
    if (c == cells) {
      best = partial;
      best_labels = labels;
      return;
    }
    for (std::size_t j : order[c]) {
      labels[c] = j;
      self(self, c + 1, partial + cost[c][j]);
    }
  };
  search(search, 0, Rational(0));
  DeltaContainment out;
  out.optimum = 2 * *best;
  out.contains = out.optimum < delta;
  out.labels = best_labels;
  std::vector<RandomSet> coarse(k + 1, empty_set(*p.system));
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t slot = best_labels[c] == 0 ? k : best_labels[c] - 1;
    for (std::size_t w = 0; w < coarse[slot].size(); ++w) coarse[slot][w] |= p.elements[c][w];
  }
  out.coarsening = RandomCover{p.system, std::move(coarse), "coarsening"};
  return out;
}

}  // namespace tailent

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

// Random sets, random covers and partitions, and the cover calculus.
//
// A random set is a subset of E given fiber by fiber. A random cover is a
// finite list of random sets whose union is every fiber; a random partition
// additionally has fiberwise disjoint elements. Finite sub-sigma-algebras are
// represented by the partition into their atoms.

#ifndef TAILENT_COVERS_HPP_
#define TAILENT_COVERS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tailent/budget.hpp"
#include "tailent/fibered_measure.hpp"
#include "tailent/model.hpp"
#include "tailent/point_set.hpp"
#include "tailent/rational.hpp"

namespace tailent {

// One PointSet per fiber, each over that fiber's local indices.
using RandomSet = std::vector<PointSet>;

RandomSet empty_set(const BundleRDS& rds);
RandomSet full_set(const BundleRDS& rds);
bool is_empty(const RandomSet& s);
Rational measure_of(const FiberedMeasure& mu, const RandomSet& s);

struct RandomCover {
  SystemPtr system;
  std::vector<RandomSet> elements;
  std::string label;

  std::size_t size() const { return elements.size(); }
};

// A sigma-algebra is stored as the partition into its atoms.
using SigmaAlgebra = RandomCover;

bool covers_every_fiber(const RandomCover& c);
bool is_partition(const RandomCover& c);
void require_cover(const RandomCover& c);
void require_partition(const RandomCover& c);

// Validates shape and the cover property.
RandomCover make_cover(SystemPtr system, std::vector<RandomSet> elements, std::string label = "");

// {E}.
RandomCover trivial_cover(const SystemPtr& system);
// One element {(w, x)} per point of E; generates the full sigma-algebra.
RandomCover singleton_partition(const SystemPtr& system);
// Atoms {w} x E_w; the sigma-algebra F_E.
RandomCover fiber_partition(const SystemPtr& system);
// Atoms (w, first coordinate) of a product system: D_H, A_{E^(2)}.
RandomCover first_coordinate_partition(const SystemPtr& product);
// Atoms (w, second coordinate) of a product system: A_H.
RandomCover second_coordinate_partition(const SystemPtr& product);
// Element-wise preimage pi^{-1} c on the source of `pi`.
RandomCover preimage_cover(const FactorMap& pi, const RandomCover& c);
// pi^{-1} of the full sigma-algebra of the target: atoms (w, pi_w y).
RandomCover factor_partition(const FactorMap& pi);
// The same sets viewed on another system with identical fibers (a power system).
RandomCover rehome(const RandomCover& c, const SystemPtr& system);

// All fiberwise intersections; elements empty on every fiber are dropped and
// repeated elements are kept once. Throws IncompatibleSystems.
RandomCover join(const RandomCover& a, const RandomCover& b);

// Element-wise (T_w^i)^{-1} Q(theta^i w). i = 0 returns q unchanged.
RandomCover pullback(const RandomCover& q, std::size_t i);

// Q^(n), the join of pullbacks 0..n-1. Throws BudgetExceeded when the element
// count passes budget.max_cover_elements.
RandomCover iterate_cover(const RandomCover& q, std::size_t n, const Budget& budget = {});

enum class RefinementMode {
  kUniform,    // one witness element of q for all fibers
  kFiberwise,  // the witness may change with w
};

// r is finer than q.
bool refines(const RandomCover& r, const RandomCover& q,
             RefinementMode mode = RefinementMode::kUniform);

// Distinct nonempty traces {A(w)} in increasing order.
std::vector<PointSet> fiber_traces(const RandomCover& c, std::size_t omega);

// Both covers induce the same trace family on every fiber.
bool same_traces(const RandomCover& a, const RandomCover& b);

// Trace families of Q^(n)(w), computed level by level from
// Q^(n)(w) = Q(w) v T_w^{-1} Q^(n-1)(theta w) and memoized over (w, n).
// Not thread safe.
class IteratedTraces {
 public:
  IteratedTraces(RandomCover cover, Budget budget = {});

  const RandomCover& cover() const { return cover_; }
  // Throws BudgetExceeded (reached = deepest complete level).
  const std::vector<PointSet>& at(std::size_t omega, std::size_t n);

 private:
  void extend();

  RandomCover cover_;
  Budget budget_;
  std::vector<std::vector<std::vector<PointSet>>> levels_;
};

// Largest distance inside `s` (0 for sets with fewer than two points).
Rational diameter(const BundleRDS& rds, std::size_t omega, const PointSet& s);

struct SmallDiameterPartition {
  RandomCover partition;
  std::vector<Rational> max_diameter;  // per fiber
  // mu(boundary R) = 0 for every supplied measure; in the discrete topology of
  // a finite fiber every boundary is empty.
  bool boundary_null = true;
};

// Greedy first-fit into cells of diameter <= delta(w), points in local order.
SmallDiameterPartition small_diameter_partition(const SystemPtr& system,
                                                const std::vector<Rational>& delta,
                                                std::span<const FiberedMeasure> measures = {});

struct DeltaContainment {
  bool contains = false;
  // Minimum of sum_i mu(R_i sym-diff Q_i) over coarsenings R of p.
  Rational optimum;
  // labels[c] = j > 0 puts cell c of p into R_j, matched with q element j-1;
  // 0 puts it into the padding element matched with the empty set.
  std::vector<std::size_t> labels;
  RandomCover coarsening;  // R_1..R_k followed by the padding element
};

// Exhaustive search over coarsenings of p and orderings against q. Throws
// BudgetExceeded when |p| > delta_max_cells or |q| > delta_max_targets.
DeltaContainment delta_contains(const RandomCover& p, const RandomCover& q,
                                const FiberedMeasure& mu, const Rational& delta,
                                const Budget& budget = {});

}  // namespace tailent

#endif  // TAILENT_COVERS_HPP_

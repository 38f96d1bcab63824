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

// Conditional and relative measure-theoretic entropy on finite partitions.
//
// Sigma-algebras are finite and given by their atoms, so every conditional
// expectation is a ratio of exact rational masses:
//
//   H_mu(R | S) = -sum_{atoms s} sum_i mu(R_i & s) log(mu(R_i & s) / mu(s))
//
// with 0 log 0 = 0. Masses are exact; only the logarithms are doubles.

#ifndef TAILENT_MEASURES_HPP_
#define TAILENT_MEASURES_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tailent/budget.hpp"
#include "tailent/covers.hpp"
#include "tailent/fibered_measure.hpp"
#include "tailent/tail_entropy.hpp"

namespace tailent {

// Label of the atom containing each point (by flat index), numbered in order
// of first appearance. Throws ValidationError if `partition` is not one.
std::vector<std::size_t> atom_labels(const RandomCover& partition);

// Labels of the common refinement, numbered in order of first appearance.
std::vector<std::size_t> join_labels(const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b);

// Atoms of R^(n): the itinerary (r(p), r(Theta p), ..., r(Theta^{n-1} p)).
std::vector<std::size_t> itinerary_labels(const BundleRDS& rds, const std::vector<std::size_t>& r,
                                          std::size_t n);

// Every atom of `fine` lies inside an atom of `coarse`.
bool labels_refine(const std::vector<std::size_t>& fine, const std::vector<std::size_t>& coarse);
bool sigma_refines(const SigmaAlgebra& fine, const SigmaAlgebra& coarse);

// Theta^{-1} S is coarser than S: the S-atom of p determines that of Theta p.
bool sigma_backward_invariant(const SigmaAlgebra& s);

// mu_w = mu(w, .) / P(w); empty slot where P(w) = 0.
std::vector<std::optional<std::vector<Rational>>> disintegrate(const FiberedMeasure& mu);

double entropy_of_labels(const FiberedMeasure& mu, const std::vector<std::size_t>& r,
                         const std::vector<std::size_t>& s);

double conditional_entropy(const FiberedMeasure& mu, const RandomCover& r, const SigmaAlgebra& s);

// sum_w P(w) H_{mu_w}(R(w)).
double fiber_entropy_integral(const FiberedMeasure& mu, const RandomCover& r);

// b_n = H_mu(R^(n) | S), n = 1..n_max. Throws PreconditionFailed
// ("mu-invariant" or "sigma-invariant") unless mu is Theta-invariant and
// Theta^{-1} S is coarser than S.
EntropyEstimate relative_entropy_sequence(const FiberedMeasure& mu, const RandomCover& r,
                                          const SigmaAlgebra& s, std::size_t n_max);

// h_mu(Theta | S), evaluated at the singleton partition.
EntropyEstimate transformation_relative_entropy(const FiberedMeasure& mu, const SigmaAlgebra& s,
                                                std::size_t n_max);

struct DefectReport {
  double asymptotic = 0;      // from certified limits, floored at 0
  double raw_asymptotic = 0;
  double truncated = 0;       // sup b_n(mu)/n - b_n(m)/n at n = n_max, floored at 0
  double raw_truncated = 0;
  std::size_t neighbors = 0;  // family members within epsilon
  bool empty_neighborhood = false;
};

// Neighborhood of m: family members with l1_distance <= epsilon.
DefectReport defect(const FiberedMeasure& m, const SigmaAlgebra& s,
                    std::span<const FiberedMeasure> family, const Rational& epsilon,
                    std::size_t n_max);

struct SlackCheck {
  double left = 0;
  double right = 0;
  double slack = 0;  // right - left
  bool holds = true;
};

// H_mu(R | sigma(Q) v F_E) <= sum_w P(w) log N(R | Q)(w).
SlackCheck lemlog_check(const FiberedMeasure& mu, const RandomCover& r, const RandomCover& q);

// H_mu(R | S) <= H_mu(Q | S) + sum_w P(w) log N(R | Q)(w).
SlackCheck lem3_check(const FiberedMeasure& mu, const RandomCover& r, const RandomCover& q,
                      const SigmaAlgebra& s);

struct Lem415Check {
  DeltaContainment containment;
  double entropy = 0;          // H_mu(Q | P)
  double corrected_bound = 0;  // -d log d - (1-d) log(1-d) + d log k
  double printed_bound = 0;    // -d log d + (1-d) log(1-d) + d log k
  bool holds_corrected = true;
  bool holds_printed = true;
};

// Throws PreconditionFailed("delta-contains") when p does not delta-contain q
// and ("delta") when delta >= 1.
Lem415Check lem415_bound_check(const FiberedMeasure& mu, const RandomCover& p,
                               const RandomCover& q, const Rational& delta,
                               const Budget& budget = {});

struct FiltrationCheck {
  std::vector<double> values;  // H_mu(R | A_i)
  double target_value = 0;     // H_mu(R | target)
  bool monotone = true;
  bool limit_matches = true;
  bool holds() const { return monotone && limit_matches; }
};

// Throws PreconditionFailed("filtration") if the chain does not refine or its
// last element does not generate `target`.
FiltrationCheck filtration_limit_check(const FiberedMeasure& mu, const RandomCover& r,
                                       std::span<const SigmaAlgebra> chain,
                                       const SigmaAlgebra& target);

// (pi mu)(w, x) = sum over pi_w(y) = x of mu(w, y).
FiberedMeasure pushforward_measure(const FactorMap& pi, const FiberedMeasure& mu);

}  // namespace tailent

#endif  // TAILENT_MEASURES_HPP_

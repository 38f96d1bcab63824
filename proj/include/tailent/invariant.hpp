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

// Invariant measures of finite skew products.
//
// Theta is a function on the finite set E, so every orbit ends in a cycle and
// every invariant measure is constant along each cycle it charges. Cesaro
// limits, lifts along factors and the vertices of the invariant polytope are
// all computed exactly from that structure.

#ifndef TAILENT_INVARIANT_HPP_
#define TAILENT_INVARIANT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tailent/budget.hpp"
#include "tailent/covers.hpp"
#include "tailent/fibered_measure.hpp"
#include "tailent/point_set.hpp"
#include "tailent/rational.hpp"

namespace tailent {

// Theta_* mu.
FiberedMeasure push_forward_step(const FiberedMeasure& mu);

// l1_distance(Theta_* mu, mu); 0 iff mu is Theta-invariant.
Rational invariance_defect(const FiberedMeasure& mu);

// (1/n) sum_{i<n} Theta^i_* nu.
FiberedMeasure cesaro_average(const FiberedMeasure& nu, std::size_t n);

// lim_n cesaro_average(nu, n): each point's mass spread evenly over the cycle
// its orbit falls into.
FiberedMeasure cesaro_limit(const FiberedMeasure& nu);

struct LiftResult {
  FiberedMeasure initial;  // uniform conditional weights on pi-fibers
  FiberedMeasure lifted;   // cesaro_limit(initial)
  bool invariant = false;  // invariance_defect(lifted) == 0
  bool projects = false;   // pushforward(pi, lifted) == mu
};

// Throws PreconditionFailed("mu-invariant") for non-invariant mu.
LiftResult lift_invariant(const FactorMap& pi, const FiberedMeasure& mu);

struct InvariantPolytope {
  SystemPtr system;
  std::vector<FiberedMeasure> vertices;  // sorted by weight vector
  std::string method;                    // "full" or "cycles"
};

// Vertices of {mu >= 0 : marginal P, Theta_* mu = mu} by double description
// over exact rationals. Throws BudgetExceeded when |E| > vertex_max_points.
InvariantPolytope vertex_enumeration(const SystemPtr& system, const Budget& budget = {});

struct HullCertificate {
  bool member = false;
  std::vector<Rational> weights;  // convex weights on the vertices when member
};

// Exact phase-one simplex (Bland's rule).
HullCertificate convex_hull_membership(const InvariantPolytope& polytope,
                                       const FiberedMeasure& mu);

// max_{k<n} d(T^k x, T^k y) / delta(theta^k w).
Rational bowen_distance(const BundleRDS& rds, std::size_t omega, std::size_t x, std::size_t y,
                        std::size_t n, const std::vector<Rational>& delta);

// {x in E_w : d(T^k x, T^k y) < delta(theta^k w), 0 <= k < n}.
PointSet bowen_ball(const BundleRDS& rds, std::size_t omega, std::size_t y, std::size_t n,
                    const std::vector<Rational>& delta);

// min_x max_{P} min_{y not in P} d(x, y) over the traces of a cover on fiber
// w; nullopt when some trace is the whole fiber (every radius works).
std::optional<Rational> lebesgue_number(const BundleRDS& rds, std::size_t omega,
                                        const std::vector<PointSet>& traces);

struct SeparatedFiber {
  PointSet chosen;               // Q in Q^(n)(w) maximizing N(Q, P^(n))(w)
  std::size_t count = 0;         // N(Q, P^(n))(w)
  std::size_t anchor = 0;        // smallest point id in Q
  std::vector<std::size_t> separated;  // E_n(w), greedy in point-id order
  bool gate = false;             // delta <= Lebesgue number of P along the orbit
  bool spanning = false;         // every point of Q lies in a Bowen ball of E_n(w)
  bool card_ok = true;           // |E_n(w)| >= count whenever the gate passes
};

struct SeparatedEmpirical {
  std::size_t n = 0;
  std::vector<Rational> delta;
  SystemPtr pair;                      // E^(2)
  std::vector<SeparatedFiber> fibers;
  FiberedMeasure sigma;                // sigma^(n)
  FiberedMeasure mu_n;                 // Cesaro average of sigma^(n)
  FiberedMeasure mu_q;                 // cesaro_limit(mu_n)
  Rational mu_n_defect;
  bool mu_n_support_ok = false;        // asserted
  bool mu_q_support_ok = false;        // reported only
  // H_sigma(pi_2^{-1} P^(n) | A_{E^(2)}) = sum_w P(w) log |E_n(w)|, checked
  // when every P^(n)(w) cell holds at most one separated point.
  bool eq1_applicable = false;
  bool eq1_holds = true;
};

// Throws PreconditionFailed("metric") when the system has no metric.
SeparatedEmpirical separated_empirical(const RandomCover& p, const RandomCover& q, std::size_t n,
                                       const std::vector<Rational>& delta,
                                       const Budget& budget = {});

struct DiagonalMeasure {
  std::vector<SeparatedEmpirical> stages;
  FiberedMeasure m;
  bool invariant = false;
  bool diagonal_expected = false;  // the chain ends in the singleton partition
  bool on_diagonal = false;
  std::vector<double> b;           // b_n of m against A_{E^(2)} on the pair system
  bool b_zero = false;
};

// Throws PreconditionFailed("chain") unless each cover refines its predecessor.
DiagonalMeasure diagonal_measure(const std::vector<RandomCover>& q_chain,
                                 const std::vector<RandomCover>& p_chain, std::size_t n,
                                 const std::vector<Rational>& delta, std::size_t n_entropy,
                                 const Budget& budget = {});

}  // namespace tailent

#endif  // TAILENT_INVARIANT_HPP_

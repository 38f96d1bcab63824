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

// Integrated log-count sequences and Fekete estimates of relative tail
// entropy.
//
//   a_n = sum_w P(w) log N(R^(n) | Q^(n))(w)
//
// is subadditive, so h_Theta(R | Q) = lim a_n / n = inf a_n / n. The running
// infimum of a_n / n is an upper bracket of the limit; no lower bracket is
// claimed.

#ifndef TAILENT_TAIL_ENTROPY_HPP_
#define TAILENT_TAIL_ENTROPY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailent/budget.hpp"
#include "tailent/covers.hpp"

namespace tailent {

struct EntropyEstimate {
  std::string label;
  std::vector<double> a;            // a_1 .. a_{n_reached}
  std::vector<double> ratios;       // a_n / n
  std::vector<double> running_inf;  // min_{k <= n} a_k / k
  std::size_t n_reached = 0;
  bool subadditive = true;
  double max_subadditivity_excess = 0;  // max over pairs of a_{n+m} - a_n - a_m
  // Exact limit, when a certificate is available (bounded counts on explicit
  // systems give 0).
  std::optional<double> certified_limit;
  std::string certificate;
  bool truncated = false;  // a budget stopped the sequence early
  std::string truncation_reason;

  double upper_bracket() const { return running_inf.empty() ? 0.0 : running_inf.back(); }
};

// Fekete bookkeeping for a given sequence; also the hook for synthetic tests.
EntropyEstimate estimate_from_sequence(std::vector<double> a, std::string label = "");

double integrated_log_count(const RandomCover& r, const RandomCover& q, std::size_t n,
                            const Budget& budget = {});

// a_1..a_{n_max}. On a budget overrun the computed prefix is returned with
// `truncated` set; BudgetExceeded propagates only if not even a_1 fits.
EntropyEstimate tail_entropy_estimate(const RandomCover& r, const RandomCover& q,
                                      std::size_t n_max, const Budget& budget = {});

struct TailValue {
  double truncated = 0;              // from running infima at n_max
  std::optional<double> certified;   // from certified limits, when all exist
};

// h(Theta | Q) over a finite family of covers R (max).
TailValue cover_conditional_entropy(const RandomCover& q, std::span<const RandomCover> family,
                                    std::size_t n_max, const Budget& budget = {});

// h*(Theta) over finite families (min over Q of max over R).
TailValue tail_entropy_total(std::span<const RandomCover> q_family,
                             std::span<const RandomCover> r_family, std::size_t n_max,
                             const Budget& budget = {});

// h^(r)_Theta(R) = h_Theta(R | trivial cover).
EntropyEstimate relative_topological(const RandomCover& r, std::size_t n_max,
                                     const Budget& budget = {});

struct PowerRuleResult {
  bool holds = true;
  std::size_t m = 1;
  std::size_t n = 1;
  std::vector<std::size_t> direct;     // N(R^(nm) | Q^(nm))(w) under Theta
  std::vector<std::size_t> via_power;  // n-fold Theta^m iterates of R^(m), Q^(m)
  std::optional<std::size_t> mismatch_omega;
};

// Compares two independent computations on Theta and on the materialized
// power system Theta^m.
PowerRuleResult power_rule_check(const RandomCover& r, const RandomCover& q, std::size_t m,
                                 std::size_t n, const Budget& budget = {});

}  // namespace tailent

#endif  // TAILENT_TAIL_ENTROPY_HPP_

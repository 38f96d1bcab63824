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

#include "tailent/tail_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailent/counting.hpp"
#include "tailent/errors.hpp"

namespace tailent {
namespace {

double log_count(std::size_t c) { return std::log(static_cast<double>(c)); }

double weighted_log(const BundleRDS& rds, const std::vector<std::size_t>& counts) {
  double s = 0;
  for (std::size_t w = 0; w < counts.size(); ++w) {
    double p = to_double(rds.base().prob(w));
    if (p != 0) s += p * log_count(counts[w]);
  }
  return s;
}

}  // namespace

EntropyEstimate estimate_from_sequence(std::vector<double> a, std::string label) {
  EntropyEstimate e;
  e.label = std::move(label);
  e.a = std::move(a);
  e.n_reached = e.a.size();
  double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < e.a.size(); ++k) {
    double r = e.a[k] / static_cast<double>(k + 1);
    e.ratios.push_back(r);
    inf = std::min(inf, r);
    e.running_inf.push_back(inf);
  }
  for (std::size_t n = 1; n <= e.a.size(); ++n)
    for (std::size_t m = 1; n + m <= e.a.size(); ++m) {
      double excess = e.a[n + m - 1] - e.a[n - 1] - e.a[m - 1];
      e.max_subadditivity_excess = std::max(e.max_subadditivity_excess, excess);
    }
  e.subadditive = e.max_subadditivity_excess <= kTolerance;
  return e;
}

double integrated_log_count(const RandomCover& r, const RandomCover& q, std::size_t n,
                            const Budget& budget) {
  return weighted_log(*r.system, count_profile(r, q, n, budget).counts);
}

EntropyEstimate tail_entropy_estimate(const RandomCover& r, const RandomCover& q,
                                      std::size_t n_max, const Budget& budget) {
  if (n_max == 0) throw PreconditionFailed("n_max", "n_max must be >= 1");
  CountEngine engine(r, q, budget);
  std::vector<double> a;
  std::string reason;
  for (std::size_t n = 1; n <= n_max; ++n) {
    try {
      a.push_back(weighted_log(*r.system, engine.profile(n).counts));
    } catch (const BudgetExceeded& e) {
      if (a.empty()) throw;
      reason = e.what();
      break;
    }
  }
  std::string label = r.label + " | " + q.label;
  EntropyEstimate est = estimate_from_sequence(std::move(a), label);
  est.truncated = !reason.empty();
  est.truncation_reason = reason;
  double bound = std::log(static_cast<double>(r.system->max_fiber_size()));
  bool bounded = std::all_of(est.a.begin(), est.a.end(),
                             [&](double v) { return v <= bound + kTolerance; });
  if (bounded) {
    // N(R^(n) | Q^(n))(w) <= |E_w| for every n: a_n is bounded, a_n / n -> 0.
    est.certified_limit = 0.0;
    est.certificate = "counts bounded by max fiber size";
  }
  return est;
}

TailValue cover_conditional_entropy(const RandomCover& q, std::span<const RandomCover> family,
                                    std::size_t n_max, const Budget& budget) {
  if (family.empty()) throw PreconditionFailed("family", "cover family is empty");
  TailValue v;
  v.truncated = -std::numeric_limits<double>::infinity();
  std::optional<double> cert = -std::numeric_limits<double>::infinity();
  for (const auto& r : family) {
    EntropyEstimate e = tail_entropy_estimate(r, q, n_max, budget);
    v.truncated = std::max(v.truncated, e.upper_bracket());
    if (cert && e.certified_limit) cert = std::max(*cert, *e.certified_limit);
    else cert.reset();
  }
  v.certified = cert;
  return v;
}

TailValue tail_entropy_total(std::span<const RandomCover> q_family,
                             std::span<const RandomCover> r_family, std::size_t n_max,
                             const Budget& budget) {
  if (q_family.empty()) throw PreconditionFailed("family", "q family is empty");
  TailValue v;
  v.truncated = std::numeric_limits<double>::infinity();
  std::optional<double> cert = std::numeric_limits<double>::infinity();
  for (const auto& q : q_family) {
    TailValue c = cover_conditional_entropy(q, r_family, n_max, budget);
    v.truncated = std::min(v.truncated, c.truncated);
    if (cert && c.certified) cert = std::min(*cert, *c.certified);
    else cert.reset();
  }
  v.certified = cert;
  return v;
}

EntropyEstimate relative_topological(const RandomCover& r, std::size_t n_max,
                                     const Budget& budget) {
  return tail_entropy_estimate(r, trivial_cover(r.system), n_max, budget);
}

PowerRuleResult power_rule_check(const RandomCover& r, const RandomCover& q, std::size_t m,
                                 std::size_t n, const Budget& budget) {
  if (m == 0 || n == 0) throw PreconditionFailed("power", "m and n must be >= 1");
  PowerRuleResult out;
  out.m = m;
  out.n = n;
  out.direct = count_profile(r, q, n * m, budget).counts;
  SystemPtr power = power_system(r.system, m);
  RandomCover rm = rehome(iterate_cover(r, m, budget), power);
  RandomCover qm = rehome(iterate_cover(q, m, budget), power);
  out.via_power = count_profile(rm, qm, n, budget).counts;
  for (std::size_t w = 0; w < out.direct.size(); ++w)
    if (out.direct[w] != out.via_power[w]) {
      out.holds = false;
      out.mismatch_omega = w;
      break;
    }
  return out;
}

}  // namespace tailent

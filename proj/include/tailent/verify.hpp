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

// Randomized and scripted suites that run the library's inequalities and
// identities on explicit systems and collect the outcomes in a report.

#ifndef TAILENT_VERIFY_HPP_
#define TAILENT_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tailent/budget.hpp"
#include "tailent/catalog.hpp"
#include "tailent/covers.hpp"
#include "tailent/fibered_measure.hpp"
#include "tailent/model.hpp"

namespace tailent {

enum class CheckStatus { kPass, kFail, kSkipped };

const char* status_name(CheckStatus status);

struct CheckSummary {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> skip_reasons;
  double max_violation = 0;  // largest tolerance excess seen, 0 when exact

  // kFail if anything failed, kSkipped if nothing ran, kPass otherwise.
  CheckStatus status() const;
};

struct Counterexample {
  std::string check;
  std::size_t trial = 0;
  std::string detail;
  std::string scenario;  // scenario document reproducing the trial
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<CheckSummary> checks;  // in order of first appearance
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> digests;  // one per trial, FNV-1a of the scenario
  std::vector<std::string> diagnostics;

  bool ok() const;
  std::size_t failures() const;
  const CheckSummary* find(const std::string& name) const;
  std::string to_json() const;
  std::string to_text() const;
};

// mt19937_64 stream for one trial; bounded draws use rejection sampling so
// results do not depend on the standard library's distributions.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream);
  std::size_t below(std::size_t n);
  std::size_t between(std::size_t lo, std::size_t hi);  // inclusive
  bool coin();

 private:
  std::mt19937_64 gen_;
};

struct SystemShape {
  std::size_t max_omega = 4;
  std::size_t min_fiber = 1;
  std::size_t max_fiber = 5;
  bool metric = true;  // distances drawn from {1, 9/8, ..., 2}
};

// Permutation theta with P constant on its cycles.
DrivingSystem random_driving(TrialRng& rng, std::size_t max_omega);
SystemPtr random_system(TrialRng& rng, const SystemShape& shape = {});
SystemPtr random_system_over(TrialRng& rng, const DrivingSystem& base, const SystemShape& shape);
// Random sections patched so that every point is covered.
RandomCover random_cover(TrialRng& rng, const SystemPtr& system, std::size_t min_elements,
                         std::size_t max_elements, std::string label);
RandomCover random_partition(TrialRng& rng, const SystemPtr& system, std::size_t max_cells,
                             std::string label);
// Integer weights 0..8 per point, scaled to P(w) on each fiber.
FiberedMeasure random_measure(TrialRng& rng, const SystemPtr& system);

// (n1)-(n6), per-w subadditivity and the power rule on random covers.
SuiteReport run_cover_suite(std::uint64_t seed, std::size_t trials, const Budget& budget = {});
// Count profiles of Theta^m against Theta for m in {1,2,3}, n in {1,2}.
SuiteReport run_power_rule_suite(std::uint64_t seed, std::size_t trials,
                                 const Budget& budget = {});
// min_cover_size against exhaustive enumeration (fibers <= 12, <= 8 sets).
SuiteReport run_set_cover_suite(std::uint64_t seed, std::size_t trials);
// Entropy lemmas on random product systems.
SuiteReport run_entropy_suite(std::uint64_t seed, std::size_t trials, const Budget& budget = {});
// Cesaro limits, vertex hulls and invariant lifts.
SuiteReport run_invariant_suite(std::uint64_t seed, std::size_t trials,
                                const Budget& budget = {});
// Separated sets and their empirical measures on random metric systems.
SuiteReport run_construction_suite(std::uint64_t seed, std::size_t trials,
                                   const Budget& budget = {});

SuiteReport run_theorem_suite(const std::vector<TheoremScenario>& scenarios, std::size_t n_max,
                              const Budget& budget = {});

// Throws ValidationError for an invalid factor map.
SuiteReport principal_extension_check(const FactorMap& pi, std::size_t n_max,
                                      const Budget& budget = {}, const std::string& label = "");
// principal_extension_check over extension_examples().
SuiteReport run_principal_suite(std::size_t n_max, const Budget& budget = {});

// Dispatch by name: cover, power, setcover, entropy, invariant, construction,
// theorem, principal. Throws UnknownName.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t trials,
                      const Budget& budget = {});

}  // namespace tailent

#endif  // TAILENT_VERIFY_HPP_

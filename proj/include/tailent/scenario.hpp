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

// Scenario documents: named driving systems, metric spaces, bundle systems,
// covers, measures, factor maps and subshifts in one JSON file. Rationals are
// strings "p/q"; points are referenced by name.

#ifndef TAILENT_SCENARIO_HPP_
#define TAILENT_SCENARIO_HPP_

#include <map>
#include <memory>
#include <string>

#include "tailent/covers.hpp"
#include "tailent/fibered_measure.hpp"
#include "tailent/model.hpp"
#include "tailent/symbolic.hpp"

namespace tailent {

inline constexpr int kScenarioVersion = 1;

struct Scenario {
  std::map<std::string, DrivingSystem> driving;
  std::map<std::string, std::shared_ptr<const MetricSpace>> spaces;
  std::map<std::string, SystemPtr> systems;
  std::map<std::string, RandomCover> covers;
  std::map<std::string, FiberedMeasure> measures;
  std::map<std::string, FactorMap> factors;
  std::map<std::string, RandomSFT> sfts;

  // Lookups throw UnknownName.
  const DrivingSystem& driving_system(const std::string& name) const;
  const SystemPtr& system(const std::string& name) const;
  const RandomCover& cover(const std::string& name) const;
  const FiberedMeasure& measure(const std::string& name) const;
  const FactorMap& factor(const std::string& name) const;
  const RandomSFT& sft(const std::string& name) const;
};

// Throws ParseError (with position), ValidationError or UnknownName.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Writes every object explicitly (derived systems as point tables), so the
// output loads without product structure but with identical data.
std::string dump_scenario(const Scenario& scenario);

}  // namespace tailent

#endif  // TAILENT_SCENARIO_HPP_

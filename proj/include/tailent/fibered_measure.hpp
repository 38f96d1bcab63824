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

// Exact measures on E whose marginal on Omega is P.

#ifndef TAILENT_FIBERED_MEASURE_HPP_
#define TAILENT_FIBERED_MEASURE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "tailent/model.hpp"
#include "tailent/rational.hpp"

namespace tailent {

class FiberedMeasure {
 public:
  FiberedMeasure() = default;
  // Zero measure on `system`.
  explicit FiberedMeasure(SystemPtr system);
  // `weights` are indexed by BundleRDS::flat_index.
  FiberedMeasure(SystemPtr system, std::vector<Rational> weights);

  // P(w) spread evenly over each fiber.
  static FiberedMeasure uniform(const SystemPtr& system);

  const SystemPtr& system() const { return system_; }
  const Rational& at(std::size_t omega, std::size_t i) const {
    return weights_[system_->flat_index(omega, i)];
  }
  Rational& at(std::size_t omega, std::size_t i) { return weights_[system_->flat_index(omega, i)]; }
  const std::vector<Rational>& weights() const { return weights_; }
  Rational fiber_mass(std::size_t omega) const;

  // Violations of nonnegativity and of the marginal condition.
  std::vector<std::string> violations() const;

  // Sum of |mu - nu| over all points.
  friend Rational l1_distance(const FiberedMeasure& a, const FiberedMeasure& b);
  friend bool operator==(const FiberedMeasure& a, const FiberedMeasure& b) {
    return a.system_ == b.system_ && a.weights_ == b.weights_;
  }

 private:
  SystemPtr system_;
  std::vector<Rational> weights_;
};

Rational l1_distance(const FiberedMeasure& a, const FiberedMeasure& b);

// t * a + (1 - t) * b.
FiberedMeasure mix(const Rational& t, const FiberedMeasure& a, const FiberedMeasure& b);

}  // namespace tailent

#endif  // TAILENT_FIBERED_MEASURE_HPP_

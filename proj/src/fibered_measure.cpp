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

#include "tailent/fibered_measure.hpp"

#include <utility>

#include "tailent/errors.hpp"

namespace tailent {

FiberedMeasure::FiberedMeasure(SystemPtr system)
    : system_(std::move(system)), weights_(system_->total_points(), Rational(0)) {}

FiberedMeasure::FiberedMeasure(SystemPtr system, std::vector<Rational> weights)
    : system_(std::move(system)), weights_(std::move(weights)) {
  if (weights_.size() != system_->total_points())
    throw ValidationError("measure has " + std::to_string(weights_.size()) + " weights for " +
                          std::to_string(system_->total_points()) + " points");
}

FiberedMeasure FiberedMeasure::uniform(const SystemPtr& system) {
  FiberedMeasure mu(system);
  for (std::size_t w = 0; w < system->num_fibers(); ++w)
    for (std::size_t i = 0; i < system->fiber_size(w); ++i)
      mu.at(w, i) = system->base().prob(w) / Rational(system->fiber_size(w));
  return mu;
}

Rational FiberedMeasure::fiber_mass(std::size_t omega) const {
  Rational s = 0;
  for (std::size_t i = 0; i < system_->fiber_size(omega); ++i) s += at(omega, i);
  return s;
}

std::vector<std::string> FiberedMeasure::violations() const {
  std::vector<std::string> out;
  for (std::size_t w = 0; w < system_->num_fibers(); ++w) {
    for (std::size_t i = 0; i < system_->fiber_size(w); ++i)
      if (at(w, i) < 0)
        out.push_back("negative weight at (" + std::to_string(w) + "," +
                      system_->point_name(w, i) + ")");
    Rational m = fiber_mass(w);
    if (m != system_->base().prob(w))
      out.push_back("fiber " + std::to_string(w) + " carries mass " + to_string(m) +
                    " instead of P = " + to_string(system_->base().prob(w)));
  }
  return out;
}

Rational l1_distance(const FiberedMeasure& a, const FiberedMeasure& b) {
  if (a.system_ != b.system_) throw IncompatibleSystems("measures live on different systems");
  Rational s = 0;
  for (std::size_t k = 0; k < a.weights_.size(); ++k) s += abs_of(a.weights_[k] - b.weights_[k]);
  return s;
}

FiberedMeasure mix(const Rational& t, const FiberedMeasure& a, const FiberedMeasure& b) {
  if (a.system() != b.system()) throw IncompatibleSystems("measures live on different systems");
  std::vector<Rational> w(a.weights().size());
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = t * a.weights()[k] + (1 - t) * b.weights()[k];
  return FiberedMeasure(a.system(), std::move(w));
}

}  // namespace tailent

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

// Finite bundle random dynamical systems.
//
// A system is a driving system (Omega, P, theta) on finitely many base points
// together with nonempty fibers E_w drawn from a global point set X and fiber
// maps T_w : E_w -> E_{theta w}. The skew product is
//
//   Theta(w, x) = (theta w, T_w x),   Theta^n(w, x) = (theta^n w, T_w^n x).
//
// Points inside a fiber are addressed by their fiber-local index, which is the
// position of the point in the fiber's id list. All values are immutable after
// construction and safe to share between threads.

#ifndef TAILENT_MODEL_HPP_
#define TAILENT_MODEL_HPP_

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailent/rational.hpp"

namespace tailent {

inline constexpr std::size_t kNoPoint = std::numeric_limits<std::size_t>::max();

class DrivingSystem {
 public:
  // Checks shape only (matching lengths, theta targets in range). Mass and
  // invariance are reported by violations().
  DrivingSystem(std::vector<Rational> prob, std::vector<std::size_t> theta);

  std::size_t size() const { return prob_.size(); }
  const Rational& prob(std::size_t omega) const { return prob_[omega]; }
  std::span<const Rational> probs() const { return prob_; }
  std::size_t theta(std::size_t omega) const { return theta_[omega]; }
  std::span<const std::size_t> thetas() const { return theta_; }
  std::size_t iterate(std::size_t omega, std::size_t n) const;

  // The driving system of the m-th power: same P, map theta^m.
  DrivingSystem power(std::size_t m) const;

  std::vector<std::string> violations() const;

  friend bool operator==(const DrivingSystem&, const DrivingSystem&) = default;

 private:
  std::vector<Rational> prob_;
  std::vector<std::size_t> theta_;
};

// Global point set X with an optional metric.
class MetricSpace {
 public:
  explicit MetricSpace(std::vector<std::string> points);
  MetricSpace(std::vector<std::string> points, std::vector<std::vector<Rational>> dist);

  // Every pair of distinct points at distance 1.
  static MetricSpace discrete(std::vector<std::string> points);

  std::size_t size() const { return points_.size(); }
  const std::string& name(std::size_t i) const { return points_[i]; }
  const std::vector<std::string>& names() const { return points_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool has_metric() const { return dist_.has_value(); }
  const Rational& distance(std::size_t i, std::size_t j) const;

  // Metric axioms, checked by enumerating all pairs and triples.
  std::vector<std::string> violations() const;

 private:
  std::vector<std::string> points_;
  std::optional<std::vector<std::vector<Rational>>> dist_;
};

class BundleRDS;
using SystemPtr = std::shared_ptr<const BundleRDS>;

// Recorded on systems built by product_system / pair_system: fiber-local index
// of (y, x) is y * |second fiber| + x.
struct ProductStructure {
  SystemPtr first;
  SystemPtr second;
};

class BundleRDS {
 public:
  // `fibers[w]` lists the global ids of E_w; `images[w][i]` is the global id
  // of T_w applied to the i-th point of E_w. Shape is checked here; semantic
  // invariants are reported by validate_system().
  BundleRDS(DrivingSystem base, std::shared_ptr<const MetricSpace> space,
            std::vector<std::vector<std::size_t>> fibers,
            std::vector<std::vector<std::size_t>> images,
            std::optional<ProductStructure> product = std::nullopt);

  const DrivingSystem& base() const { return base_; }
  const MetricSpace& space() const { return *space_; }
  const std::shared_ptr<const MetricSpace>& space_ptr() const { return space_; }

  std::size_t num_fibers() const { return base_.size(); }
  std::size_t fiber_size(std::size_t omega) const { return fibers_[omega].size(); }
  std::size_t max_fiber_size() const;
  std::span<const std::size_t> fiber(std::size_t omega) const { return fibers_[omega]; }
  std::size_t global_id(std::size_t omega, std::size_t i) const { return fibers_[omega][i]; }
  std::size_t local_index(std::size_t omega, std::size_t global) const;
  const std::string& point_name(std::size_t omega, std::size_t i) const {
    return space_->name(fibers_[omega][i]);
  }

  // Local index of T_w(i) inside E_{theta w}, or kNoPoint when the image
  // escapes that fiber.
  std::size_t next(std::size_t omega, std::size_t i) const { return next_[omega][i]; }
  std::size_t image_global(std::size_t omega, std::size_t i) const { return images_[omega][i]; }
  const std::vector<std::vector<std::size_t>>& images() const { return images_; }

  // Points of E enumerated fiber by fiber.
  std::size_t total_points() const { return offsets_.back(); }
  std::size_t flat_index(std::size_t omega, std::size_t i) const { return offsets_[omega] + i; }
  std::size_t fiber_offset(std::size_t omega) const { return offsets_[omega]; }

  bool has_metric() const { return space_->has_metric(); }
  const Rational& distance(std::size_t omega, std::size_t i, std::size_t j) const {
    return space_->distance(fibers_[omega][i], fibers_[omega][j]);
  }

  const std::optional<ProductStructure>& product() const { return product_; }

 private:
  DrivingSystem base_;
  std::shared_ptr<const MetricSpace> space_;
  std::vector<std::vector<std::size_t>> fibers_;
  std::vector<std::vector<std::size_t>> images_;
  std::vector<std::vector<std::size_t>> next_;
  std::vector<std::vector<std::size_t>> local_of_;
  std::vector<std::size_t> offsets_;
  std::optional<ProductStructure> product_;
};

enum class ViolationKind {
  kProbabilityMass,
  kNegativeProbability,
  kNotInvariant,
  kMetric,
  kEmptyFiber,
  kDuplicatePoint,
  kImageEscape,
  kNotSurjective,
  kNotEquivariant,
  kBaseMismatch,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string to_string() const;
};

ValidationReport validate_system(const BundleRDS& rds);

// Throws ValidationError carrying the report when `rds` is invalid.
void require_valid(const BundleRDS& rds);

struct State {
  std::size_t omega;
  std::size_t point;  // fiber-local index in E_omega

  friend bool operator==(const State&, const State&) = default;
};

// (theta^n w, T_w^n x). Throws DomainError if the state is outside E or the
// orbit leaves E.
State skew_iterate(const BundleRDS& rds, State state, std::size_t n);

// Looks up a point by name in fiber `omega`; throws DomainError if absent.
State state_of(const BundleRDS& rds, std::size_t omega, const std::string& name);

// One-point fibers over `base`; the unit of product_system.
SystemPtr point_system(const DrivingSystem& base);

// Fibers G_w x E_w with maps (S_w y, T_w x). Throws IncompatibleSystems when
// the driving systems differ.
SystemPtr product_system(const SystemPtr& s, const SystemPtr& t);

// Fibers E_w x E_w with T_w applied to both coordinates.
SystemPtr pair_system(const SystemPtr& t);

// Same fibers over (Omega, P, theta^m) with m-step fiber maps T_w^m.
SystemPtr power_system(const SystemPtr& t, std::size_t m);

// Fiberwise map pi_w : G_w -> E_w between two systems over one base.
class FactorMap {
 public:
  // `local_map[w][i]` is the local index in E_w of pi_w applied to the i-th
  // point of G_w. Shape is checked; see validate_factor for the invariants.
  FactorMap(SystemPtr source, SystemPtr target, std::vector<std::vector<std::size_t>> local_map);

  const SystemPtr& source() const { return source_; }
  const SystemPtr& target() const { return target_; }
  std::size_t operator()(std::size_t omega, std::size_t i) const { return map_[omega][i]; }
  const std::vector<std::vector<std::size_t>>& table() const { return map_; }

 private:
  SystemPtr source_;
  SystemPtr target_;
  std::vector<std::vector<std::size_t>> map_;
};

// Surjectivity pi_w(G_w) = E_w and equivariance pi_{theta w} S_w = T_w pi_w.
ValidationReport validate_factor(const FactorMap& pi);

FactorMap identity_factor(const SystemPtr& rds);

struct ProductProjections {
  FactorMap first;   // (w, y, x) -> (w, y): pi_G on H, pi_{E_1} / alpha / beta on pairs
  FactorMap second;  // (w, y, x) -> (w, x): pi_E on H, pi_{E_2} on pairs
};

// Projections of a product_system or pair_system output. Throws
// PreconditionFailed for systems without product structure.
ProductProjections canonical_projections(const SystemPtr& product);

// phi(w, y, z) = (w, pi_w y, pi_w z) from G^(2) to E^(2); builds both pair
// systems.
FactorMap induced_pair_factor(const FactorMap& pi);

}  // namespace tailent

#endif  // TAILENT_MODEL_HPP_

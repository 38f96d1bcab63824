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

#include "tailent/model.hpp"

#include <algorithm>
#include <utility>

#include "tailent/errors.hpp"

namespace tailent {
namespace {

const char* kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kProbabilityMass: return "probability-mass";
    case ViolationKind::kNegativeProbability: return "negative-probability";
    case ViolationKind::kNotInvariant: return "theta-invariance";
    case ViolationKind::kMetric: return "metric";
    case ViolationKind::kEmptyFiber: return "empty-fiber";
    case ViolationKind::kDuplicatePoint: return "duplicate-point";
    case ViolationKind::kImageEscape: return "image-escape";
    case ViolationKind::kNotSurjective: return "not-surjective";
    case ViolationKind::kNotEquivariant: return "not-equivariant";
    case ViolationKind::kBaseMismatch: return "base-mismatch";
  }
  return "unknown";
}

}  // namespace

DrivingSystem::DrivingSystem(std::vector<Rational> prob, std::vector<std::size_t> theta)
    : prob_(std::move(prob)), theta_(std::move(theta)) {
  if (prob_.empty()) throw ValidationError("driving system has no base points");
  if (prob_.size() != theta_.size())
    throw ValidationError("driving system: prob and theta lengths differ");
  for (std::size_t t : theta_)
    if (t >= theta_.size()) throw ValidationError("driving system: theta target out of range");
}

std::size_t DrivingSystem::iterate(std::size_t omega, std::size_t n) const {
  for (std::size_t k = 0; k < n; ++k) omega = theta_[omega];
  return omega;
}

DrivingSystem DrivingSystem::power(std::size_t m) const {
  std::vector<std::size_t> t(size());
  for (std::size_t w = 0; w < size(); ++w) t[w] = iterate(w, m);
  return DrivingSystem(prob_, std::move(t));
}

std::vector<std::string> DrivingSystem::violations() const {
  std::vector<std::string> out;
  Rational total = 0;
  for (std::size_t w = 0; w < size(); ++w) {
    if (prob_[w] < 0) out.push_back("negative-probability: P(" + std::to_string(w) + ") is negative");
    total += prob_[w];
  }
  if (total != 1) out.push_back("probability-mass: probabilities sum to " + to_string(total) + ", not 1");
  std::vector<Rational> pushed(size(), Rational(0));
  for (std::size_t w = 0; w < size(); ++w) pushed[theta_[w]] += prob_[w];
  for (std::size_t j = 0; j < size(); ++j)
    if (pushed[j] != prob_[j])
      out.push_back("theta-invariance: theta does not preserve P at " + std::to_string(j) + ": mass " +
                    to_string(pushed[j]) + " arrives at a site of mass " + to_string(prob_[j]));
  return out;
}

MetricSpace::MetricSpace(std::vector<std::string> points) : points_(std::move(points)) {}

MetricSpace::MetricSpace(std::vector<std::string> points, std::vector<std::vector<Rational>> dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
  if (dist_->size() != points_.size())
    throw ValidationError("metric matrix has wrong number of rows");
  for (const auto& row : *dist_)
    if (row.size() != points_.size())
      throw ValidationError("metric matrix has a row of wrong length");
}

MetricSpace MetricSpace::discrete(std::vector<std::string> points) {
  std::size_t n = points.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  return MetricSpace(std::move(points), std::move(d));
}

std::optional<std::size_t> MetricSpace::index_of(const std::string& name) const {
  auto it = std::find(points_.begin(), points_.end(), name);
  if (it == points_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

const Rational& MetricSpace::distance(std::size_t i, std::size_t j) const {
  if (!dist_) throw PreconditionFailed("metric", "system has no metric");
  return (*dist_)[i][j];
}

std::vector<std::string> MetricSpace::violations() const {
  std::vector<std::string> out;
  std::vector<std::string> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) out.push_back("duplicate point id '" + sorted[i] + "'");
  if (!dist_) return out;
  const auto& d = *dist_;
  std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0) out.push_back("d(" + points_[i] + "," + points_[i] + ") != 0");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && d[i][j] <= 0)
        out.push_back("d(" + points_[i] + "," + points_[j] + ") is not positive");
      if (d[i][j] != d[j][i])
        out.push_back("d(" + points_[i] + "," + points_[j] + ") is not symmetric");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d[i][k] > d[i][j] + d[j][k])
          out.push_back("triangle inequality fails for (" + points_[i] + "," + points_[j] + "," +
                        points_[k] + ")");
  return out;
}

BundleRDS::BundleRDS(DrivingSystem base, std::shared_ptr<const MetricSpace> space,
                     std::vector<std::vector<std::size_t>> fibers,
                     std::vector<std::vector<std::size_t>> images,
                     std::optional<ProductStructure> product)
    : base_(std::move(base)),
      space_(std::move(space)),
      fibers_(std::move(fibers)),
      images_(std::move(images)),
      product_(std::move(product)) {
  std::size_t nw = base_.size();
  if (fibers_.size() != nw || images_.size() != nw)
    throw ValidationError("fiber and map tables must have one entry per base point");
  std::size_t nx = space_->size();
  local_of_.assign(nw, std::vector<std::size_t>(nx, kNoPoint));
  offsets_.assign(nw + 1, 0);
  for (std::size_t w = 0; w < nw; ++w) {
    if (images_[w].size() != fibers_[w].size())
      throw ValidationError("map T_" + std::to_string(w) + " is not total on its fiber");
    for (std::size_t i = 0; i < fibers_[w].size(); ++i) {
      if (fibers_[w][i] >= nx || images_[w][i] >= nx)
        throw ValidationError("point id outside the global point set");
      if (local_of_[w][fibers_[w][i]] == kNoPoint) local_of_[w][fibers_[w][i]] = i;
    }
    offsets_[w + 1] = offsets_[w] + fibers_[w].size();
  }
  next_.resize(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    std::size_t tw = base_.theta(w);
    next_[w].resize(fibers_[w].size());
    for (std::size_t i = 0; i < fibers_[w].size(); ++i) next_[w][i] = local_of_[tw][images_[w][i]];
  }
}

std::size_t BundleRDS::max_fiber_size() const {
  std::size_t m = 0;
  for (const auto& f : fibers_) m = std::max(m, f.size());
  return m;
}

std::size_t BundleRDS::local_index(std::size_t omega, std::size_t global) const {
  if (global >= local_of_[omega].size()) return kNoPoint;
  return local_of_[omega][global];
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& v : violations) {
    out += kind_name(v.kind);
    out += ": ";
    out += v.message;
    out += '\n';
  }
  return out;
}

ValidationReport validate_system(const BundleRDS& rds) {
  ValidationReport report;
  auto add = [&](ViolationKind k, std::string m) { report.violations.push_back({k, std::move(m)}); };
  const DrivingSystem& base = rds.base();
  for (std::size_t w = 0; w < base.size(); ++w)
    if (base.prob(w) < 0) add(ViolationKind::kNegativeProbability, "P(" + std::to_string(w) + ") < 0");
  for (auto& msg : base.violations()) {
    std::string body = msg.substr(msg.find(": ") + 2);
    if (msg.find("sum") != std::string::npos) add(ViolationKind::kProbabilityMass, body);
    else if (msg.find("preserve") != std::string::npos) add(ViolationKind::kNotInvariant, body);
  }
  for (auto& msg : rds.space().violations()) {
    if (msg.find("duplicate") != std::string::npos) add(ViolationKind::kDuplicatePoint, msg);
    else add(ViolationKind::kMetric, msg);
  }
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    if (rds.fiber_size(w) == 0) add(ViolationKind::kEmptyFiber, "E_" + std::to_string(w) + " is empty");
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i) {
      if (rds.local_index(w, rds.global_id(w, i)) != i)
        add(ViolationKind::kDuplicatePoint,
            "point '" + rds.point_name(w, i) + "' repeated in E_" + std::to_string(w));
      if (rds.next(w, i) == kNoPoint)
        add(ViolationKind::kImageEscape,
            "T_" + std::to_string(w) + "(" + rds.point_name(w, i) + ") = " +
                rds.space().name(rds.image_global(w, i)) + " is not in E_" +
                std::to_string(base.theta(w)));
    }
  }
  return report;
}

void require_valid(const BundleRDS& rds) {
  ValidationReport report = validate_system(rds);
  if (!report.ok()) throw ValidationError("invalid system:\n" + report.to_string());
}

State skew_iterate(const BundleRDS& rds, State state, std::size_t n) {
  if (state.omega >= rds.num_fibers() || state.point >= rds.fiber_size(state.omega))
    throw DomainError("state outside E");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = rds.next(state.omega, state.point);
    if (p == kNoPoint) throw DomainError("orbit leaves E");
    state = {rds.base().theta(state.omega), p};
  }
  return state;
}

State state_of(const BundleRDS& rds, std::size_t omega, const std::string& name) {
  if (omega >= rds.num_fibers()) throw DomainError("base point out of range");
  auto g = rds.space().index_of(name);
  std::size_t i = g ? rds.local_index(omega, *g) : kNoPoint;
  if (i == kNoPoint) throw DomainError("'" + name + "' is not in E_" + std::to_string(omega));
  return {omega, i};
}

SystemPtr point_system(const DrivingSystem& base) {
  auto space = std::make_shared<const MetricSpace>(MetricSpace::discrete({"*"}));
  std::vector<std::vector<std::size_t>> fibers(base.size(), {0});
  return std::make_shared<const BundleRDS>(base, space, fibers, fibers);
}

SystemPtr product_system(const SystemPtr& s, const SystemPtr& t) {
  if (!(s->base() == t->base()))
    throw IncompatibleSystems("product of systems over different driving systems");
  const MetricSpace& ys = s->space();
  const MetricSpace& xs = t->space();
  std::size_t ny = ys.size(), nx = xs.size();
  std::vector<std::string> names;
  names.reserve(ny * nx);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x) names.push_back("(" + ys.name(y) + "," + xs.name(x) + ")");
  std::shared_ptr<const MetricSpace> space;
  if (ys.has_metric() && xs.has_metric()) {
    std::vector<std::vector<Rational>> d(ny * nx, std::vector<Rational>(ny * nx));
    for (std::size_t a = 0; a < ny * nx; ++a)
      for (std::size_t b = 0; b < ny * nx; ++b)
        d[a][b] = std::max(ys.distance(a / nx, b / nx), xs.distance(a % nx, b % nx));
    space = std::make_shared<const MetricSpace>(std::move(names), std::move(d));
  } else {
    space = std::make_shared<const MetricSpace>(std::move(names));
  }
  std::size_t nw = s->num_fibers();
  std::vector<std::vector<std::size_t>> fibers(nw), images(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t i = 0; i < s->fiber_size(w); ++i)
      for (std::size_t j = 0; j < t->fiber_size(w); ++j) {
        fibers[w].push_back(s->global_id(w, i) * nx + t->global_id(w, j));
        images[w].push_back(s->image_global(w, i) * nx + t->image_global(w, j));
      }
  }
  return std::make_shared<const BundleRDS>(s->base(), space, std::move(fibers), std::move(images),
                                           ProductStructure{s, t});
}

SystemPtr pair_system(const SystemPtr& t) {
  require_valid(*t);
  return product_system(t, t);
}

SystemPtr power_system(const SystemPtr& t, std::size_t m) {
  if (m == 0) throw PreconditionFailed("power", "exponent must be positive");
  require_valid(*t);
  std::size_t nw = t->num_fibers();
  std::vector<std::vector<std::size_t>> fibers(nw), images(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    auto f = t->fiber(w);
    fibers[w].assign(f.begin(), f.end());
    for (std::size_t i = 0; i < f.size(); ++i) {
      State s = skew_iterate(*t, {w, i}, m);
      images[w].push_back(t->global_id(s.omega, s.point));
    }
  }
  return std::make_shared<const BundleRDS>(t->base().power(m), t->space_ptr(), std::move(fibers),
                                           std::move(images));
}

FactorMap::FactorMap(SystemPtr source, SystemPtr target,
                     std::vector<std::vector<std::size_t>> local_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(local_map)) {
  if (source_->num_fibers() != target_->num_fibers() || map_.size() != source_->num_fibers())
    throw ValidationError("factor map: fiber counts differ");
  for (std::size_t w = 0; w < map_.size(); ++w) {
    if (map_[w].size() != source_->fiber_size(w))
      throw ValidationError("factor map is not total on G_" + std::to_string(w));
    for (std::size_t v : map_[w])
      if (v >= target_->fiber_size(w))
        throw ValidationError("factor map sends a point outside E_" + std::to_string(w));
  }
}

ValidationReport validate_factor(const FactorMap& pi) {
  ValidationReport report;
  const BundleRDS& g = *pi.source();
  const BundleRDS& e = *pi.target();
  if (!(g.base() == e.base())) {
    report.violations.push_back({ViolationKind::kBaseMismatch, "source and target bases differ"});
    return report;
  }
  for (std::size_t w = 0; w < g.num_fibers(); ++w) {
    std::vector<bool> hit(e.fiber_size(w), false);
    for (std::size_t i = 0; i < g.fiber_size(w); ++i) hit[pi(w, i)] = true;
    for (std::size_t x = 0; x < hit.size(); ++x)
      if (!hit[x])
        report.violations.push_back({ViolationKind::kNotSurjective,
                                     "'" + e.point_name(w, x) + "' in E_" + std::to_string(w) +
                                         " has no preimage"});
    std::size_t tw = g.base().theta(w);
    for (std::size_t i = 0; i < g.fiber_size(w); ++i) {
      std::size_t gs = g.next(w, i);
      std::size_t et = e.next(w, pi(w, i));
      if (gs == kNoPoint || et == kNoPoint || pi(tw, gs) != et)
        report.violations.push_back({ViolationKind::kNotEquivariant,
                                     "equivariance fails at (" + std::to_string(w) + "," +
                                         g.point_name(w, i) + ")"});
    }
  }
  return report;
}

FactorMap identity_factor(const SystemPtr& rds) {
  std::vector<std::vector<std::size_t>> map(rds->num_fibers());
  for (std::size_t w = 0; w < map.size(); ++w)
    for (std::size_t i = 0; i < rds->fiber_size(w); ++i) map[w].push_back(i);
  return FactorMap(rds, rds, std::move(map));
}

ProductProjections canonical_projections(const SystemPtr& product) {
  if (!product->product())
    throw PreconditionFailed("product", "system was not built as a product or pair system");
  const auto& ps = *product->product();
  std::size_t nw = product->num_fibers();
  std::vector<std::vector<std::size_t>> first(nw), second(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    std::size_t nx = ps.second->fiber_size(w);
    for (std::size_t k = 0; k < product->fiber_size(w); ++k) {
      first[w].push_back(k / nx);
      second[w].push_back(k % nx);
    }
  }
  return {FactorMap(product, ps.first, std::move(first)),
          FactorMap(product, ps.second, std::move(second))};
}

FactorMap induced_pair_factor(const FactorMap& pi) {
  SystemPtr gp = pair_system(pi.source());
  SystemPtr ep = pair_system(pi.target());
  std::vector<std::vector<std::size_t>> map(gp->num_fibers());
  for (std::size_t w = 0; w < map.size(); ++w) {
    std::size_t ng = pi.source()->fiber_size(w);
    std::size_t ne = pi.target()->fiber_size(w);
    for (std::size_t k = 0; k < gp->fiber_size(w); ++k)
      map[w].push_back(pi(w, k / ng) * ne + pi(w, k % ng));
  }
  return FactorMap(gp, ep, std::move(map));
}

}  // namespace tailent

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

#include "tailent/catalog.hpp"

#include <memory>

namespace tailent {
namespace {

DrivingSystem swap_base() { return DrivingSystem({Rational(1, 2), Rational(1, 2)}, {1, 0}); }

DrivingSystem one_point_base() { return DrivingSystem({Rational(1)}, {0}); }

// Same fiber over every base point, map `next` on local indices.
SystemPtr constant_fiber(const DrivingSystem& base, std::vector<std::string> names,
                         const std::vector<std::size_t>& next) {
  auto space = std::make_shared<const MetricSpace>(MetricSpace::discrete(std::move(names)));
  std::vector<std::size_t> ids(next.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  std::vector<std::vector<std::size_t>> fibers(base.size(), ids);
  std::vector<std::vector<std::size_t>> images(base.size(), next);
  return std::make_shared<const BundleRDS>(base, space, fibers, images);
}

}  // namespace

SystemPtr sys_a() {
  static const SystemPtr system = [] {
    auto space = std::make_shared<const MetricSpace>(MetricSpace::discrete({"a", "b", "c", "d"}));
    return std::make_shared<const BundleRDS>(swap_base(), space,
                                             std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}},
                                             std::vector<std::vector<std::size_t>>{{2, 2}, {0, 1}});
  }();
  return system;
}

SystemPtr sys_b() {
  static const SystemPtr system =
      constant_fiber(one_point_base(), {"p0", "p1", "p2", "p3"}, {1, 2, 3, 0});
  return system;
}

SystemPtr static_pair(const DrivingSystem& base) {
  return constant_fiber(base, {"u", "v"}, {0, 1});
}

SystemPtr cycle4(const DrivingSystem& base) {
  return constant_fiber(base, {"k0", "k1", "k2", "k3"}, {1, 2, 3, 0});
}

std::vector<ExtensionExample> extension_examples() {
  SystemPtr e = sys_a();
  std::vector<ExtensionExample> out;
  out.push_back({"identity", identity_factor(e)});
  out.push_back({"static-pair", canonical_projections(product_system(e, static_pair(e->base()))).first});
  out.push_back({"cycle4", canonical_projections(product_system(e, cycle4(e->base()))).first});
  return out;
}

std::vector<TheoremScenario> theorem_scenarios() {
  return {
      {"sys-a-x-sys-a", sys_a(), sys_a()},
      {"point-x-sys-a", point_system(sys_a()->base()), sys_a()},
      {"sys-b-x-sys-b", sys_b(), sys_b()},
  };
}

RandomSFT two_full_shifts() {
  return constant_sft(one_point_base(), {full_shift_matrix(2), full_shift_matrix(2)},
                      "two-full-shifts");
}

RandomSFT golden_mean_shift() {
  return constant_sft(one_point_base(), {golden_mean_matrix()}, "golden-mean");
}

}  // namespace tailent

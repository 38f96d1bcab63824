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

// Builders and brute-force oracles shared by the unit tests. The oracles work
// from point orbits and bitmask enumeration only; they do not call the
// library's cover calculus.

#ifndef TAILENT_TESTS_HELPERS_HPP_
#define TAILENT_TESTS_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tailent/covers.hpp"
#include "tailent/fibered_measure.hpp"
#include "tailent/model.hpp"

namespace tailent::testing {

using Mask = std::uint32_t;

// Fibers and maps given by point names; discrete metric on all names.
inline SystemPtr build_system(std::vector<std::string> prob, std::vector<std::size_t> theta,
                              const std::vector<std::vector<std::string>>& fibers,
                              const std::vector<std::vector<std::string>>& images) {
  std::vector<Rational> p;
  for (const auto& s : prob) p.push_back(parse_rational(s));
  std::vector<std::string> names;
  for (const auto& f : fibers)
    for (const auto& n : f)
      if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  auto space = std::make_shared<const MetricSpace>(MetricSpace::discrete(names));
  auto id = [&](const std::string& n) { return *space->index_of(n); };
  std::vector<std::vector<std::size_t>> f_ids, i_ids;
  for (std::size_t w = 0; w < fibers.size(); ++w) {
    f_ids.emplace_back();
    i_ids.emplace_back();
    for (const auto& n : fibers[w]) f_ids.back().push_back(id(n));
    for (const auto& n : images[w]) i_ids.back().push_back(id(n));
  }
  return std::make_shared<const BundleRDS>(DrivingSystem(p, theta), space, f_ids, i_ids);
}

// Element k is given fiber by fiber as bitmasks over local indices.
inline RandomCover cover_from_masks(const SystemPtr& sys, const std::vector<std::vector<Mask>>& elems,
                                    const std::string& label = "c") {
  std::vector<RandomSet> out;
  for (const auto& e : elems) {
    RandomSet s;
    for (std::size_t w = 0; w < sys->num_fibers(); ++w) {
      PointSet ps(sys->fiber_size(w));
      for (std::size_t i = 0; i < sys->fiber_size(w); ++i)
        if (e[w] >> i & 1u) ps.insert(i);
      s.push_back(ps);
    }
    out.push_back(s);
  }
  return make_cover(sys, out, label);
}

inline Mask to_mask(const PointSet& s) {
  Mask m = 0;
  for (auto i : s.members()) m |= Mask{1} << i;
  return m;
}

// Local index of T_w^k x, following the orbit point by point.
inline std::size_t orbit_point(const BundleRDS& rds, std::size_t w, std::size_t x, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t g = rds.image_global(w, x);
    w = rds.base().theta(w);
    x = rds.local_index(w, g);
  }
  return x;
}

// Traces on fiber w of the join over i < n of the i-step preimages of c, by
// enumerating every tuple of elements.
inline std::vector<Mask> iterated_traces_oracle(const RandomCover& c, std::size_t w, std::size_t n) {
  const BundleRDS& rds = *c.system;
  std::size_t m = c.elements.size();
  std::vector<Mask> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    Mask s = 0;
    for (std::size_t x = 0; x < rds.fiber_size(w); ++x) {
      bool in = true;
      std::size_t v = w;
      for (std::size_t i = 0; i < n && in; ++i) {
        std::size_t y = orbit_point(rds, w, x, i);
        in = c.elements[pick[i]][v].contains(y);
        v = rds.base().theta(v);
      }
      if (in) s |= Mask{1} << x;
    }
    if (s != 0 && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    std::size_t k = 0;
    while (k < n && ++pick[k] == m) pick[k++] = 0;
    if (k == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Smallest number of family members covering target, by subset enumeration.
inline std::size_t min_cover_oracle(Mask target, const std::vector<Mask>& family) {
  if (target == 0) return 1;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << family.size()); ++sub) {
    Mask u = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < family.size(); ++i)
      if (sub >> i & 1u) {
        u |= family[i];
        ++k;
      }
    if ((u & target) == target) best = std::min(best, k);
  }
  return best;
}

inline std::size_t relative_count_oracle(const RandomCover& r, const RandomCover& q, std::size_t w,
                                         std::size_t n) {
  auto rt = iterated_traces_oracle(r, w, n), qt = iterated_traces_oracle(q, w, n);
  std::size_t best = 1;
  for (Mask t : qt) best = std::max(best, min_cover_oracle(t, rt));
  return best;
}

// H(R | S) for partitions, straight from the definition with doubles.
inline double conditional_entropy_oracle(const FiberedMeasure& mu, const RandomCover& r, const RandomCover& s) {
  const BundleRDS& rds = *mu.system();
  double h = 0;
  for (const auto& b : s.elements) {
    double mb = 0;
    for (std::size_t w = 0; w < rds.num_fibers(); ++w)
      for (auto i : b[w].members()) mb += to_double(mu.at(w, i));
    if (mb == 0) continue;
    for (const auto& a : r.elements) {
      double mab = 0;
      for (std::size_t w = 0; w < rds.num_fibers(); ++w)
        for (auto i : (a[w] & b[w]).members()) mab += to_double(mu.at(w, i));
      if (mab > 0) h -= mab * std::log(mab / mb);
    }
  }
  return h;
}

}  // namespace tailent::testing

#endif  // TAILENT_TESTS_HELPERS_HPP_

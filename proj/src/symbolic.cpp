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

#include "tailent/symbolic.hpp"

#include <algorithm>

#include "tailent/errors.hpp"

namespace tailent {
namespace {

void require_spec(const RandomSFT& sft, const CylinderCoverSpec& spec) {
  if (spec.depth == 0) throw PreconditionFailed("cylinder", "depth must be >= 1");
  for (std::size_t c : spec.components)
    if (c >= sft.components.size()) throw UnknownName("component " + std::to_string(c));
}

bool resolves(const CylinderCoverSpec& spec, std::size_t c) {
  return std::find(spec.components.begin(), spec.components.end(), c) != spec.components.end();
}

// Row vector of continuation counts: v[s] = number of admissible words of
// length `span` + 1 whose first symbol s sits at position `start`.
std::vector<BigInt> continuations(const RandomSFT& sft, std::size_t c, std::size_t omega,
                                  std::size_t start, std::size_t span) {
  const SftComponent& comp = sft.components[c];
  std::vector<BigInt> v(comp.alphabet, BigInt(1));
  for (std::size_t k = span; k-- > 0;) {
    const TransitionMatrix& m = comp.matrices[sft.base.iterate(omega, start + k)];
    std::vector<BigInt> next(comp.alphabet, BigInt(0));
    for (std::size_t s = 0; s < comp.alphabet; ++s)
      for (std::size_t t = 0; t < comp.alphabet; ++t)
        if (m[s][t]) next[s] += v[t];
    v = std::move(next);
  }
  return v;
}

}  // namespace

std::vector<std::string> validate_sft(const RandomSFT& sft) {
  std::vector<std::string> out = sft.base.violations();
  for (std::size_t c = 0; c < sft.components.size(); ++c) {
    const auto& comp = sft.components[c];
    std::string tag = "component " + std::to_string(c);
    if (comp.alphabet == 0) out.push_back(tag + " has an empty alphabet");
    if (comp.matrices.size() != sft.base.size()) {
      out.push_back(tag + " needs one matrix per base point");
      continue;
    }
    for (std::size_t w = 0; w < comp.matrices.size(); ++w) {
      const auto& m = comp.matrices[w];
      bool shape = m.size() == comp.alphabet &&
                   std::all_of(m.begin(), m.end(),
                               [&](const auto& row) { return row.size() == comp.alphabet; });
      if (!shape) {
        out.push_back(tag + " matrix at " + std::to_string(w) + " has wrong shape");
        continue;
      }
      for (std::size_t s = 0; s < comp.alphabet; ++s) {
        bool row = false, col = false;
        for (std::size_t t = 0; t < comp.alphabet; ++t) {
          row = row || m[s][t] != 0;
          col = col || m[t][s] != 0;
        }
        if (!row || !col)
          out.push_back(tag + " matrix at " + std::to_string(w) + " has dead symbol " +
                        std::to_string(s));
      }
    }
  }
  return out;
}

BigInt admissible_word_count(const RandomSFT& sft, std::size_t component, std::size_t omega,
                             std::size_t n) {
  if (n == 0) throw PreconditionFailed("length", "word length must be >= 1");
  if (component >= sft.components.size()) throw UnknownName("component " + std::to_string(component));
  BigInt total = 0;
  for (const auto& v : continuations(sft, component, omega, 0, n - 1)) total += v;
  return total;
}

BigInt cylinder_relative_count(const RandomSFT& sft, const CylinderCoverSpec& r,
                               const CylinderCoverSpec& q, std::size_t omega, std::size_t n) {
  require_spec(sft, r);
  require_spec(sft, q);
  for (std::size_t c : q.components)
    if (!resolves(r, c))
      throw PreconditionFailed("cylinder", "R must resolve every component Q resolves");
  std::size_t lr = n + r.depth - 1;
  std::size_t lq = n + q.depth - 1;
  BigInt count = 1;
  for (std::size_t c : r.components) {
    if (!resolves(q, c)) {
      count *= admissible_word_count(sft, c, omega, lr);
    } else if (lr > lq) {
      auto v = continuations(sft, c, omega, lq - 1, lr - lq);
      count *= *std::max_element(v.begin(), v.end());
    }
  }
  return count;
}

EntropyEstimate sft_tail_sequence(const RandomSFT& sft, const CylinderCoverSpec& r,
                                  const CylinderCoverSpec& q, std::size_t n_max) {
  if (n_max == 0) throw PreconditionFailed("n_max", "n_max must be >= 1");
  std::vector<double> a;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double s = 0;
    for (std::size_t w = 0; w < sft.base.size(); ++w) {
      double p = to_double(sft.base.prob(w));
      if (p != 0) s += p * log_of(cylinder_relative_count(sft, r, q, w, n));
    }
    a.push_back(s);
  }
  return estimate_from_sequence(std::move(a), sft.label);
}

RandomSFT constant_sft(const DrivingSystem& base, std::vector<TransitionMatrix> matrices,
                       std::string label) {
  RandomSFT sft{base, {}, std::move(label)};
  for (auto& m : matrices) sft.components.push_back({m.size(), std::vector<TransitionMatrix>(base.size(), m)});
  return sft;
}

TransitionMatrix full_shift_matrix(std::size_t alphabet) {
  return TransitionMatrix(alphabet, std::vector<std::uint8_t>(alphabet, 1));
}

TransitionMatrix golden_mean_matrix() { return {{1, 1}, {1, 0}}; }

}  // namespace tailent

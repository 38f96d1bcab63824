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

#include "tailent/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "tailent/errors.hpp"

namespace tailent {
namespace {

std::size_t* field(Budget& b, std::string_view key) {
  if (key == "max_cover_elements") return &b.max_cover_elements;
  if (key == "delta_max_cells") return &b.delta_max_cells;
  if (key == "delta_max_targets") return &b.delta_max_targets;
  if (key == "vertex_max_points") return &b.vertex_max_points;
  if (key == "sft_max_words") return &b.sft_max_words;
  return nullptr;
}

}  // namespace

void Budget::apply_overrides(std::string_view spec) {
  while (!spec.empty()) {
    std::size_t comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("budget override '" + std::string(item) + "' lacks '='");
    std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    std::size_t* target = field(*this, key);
    if (target == nullptr) throw ParseError("unknown budget '" + std::string(key) + "'");
    std::size_t parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size() || parsed == 0)
      throw ParseError("bad budget value '" + std::string(value) + "'");
    *target = parsed;
  }
}

Budget Budget::from_environment() {
  Budget b;
  if (const char* env = std::getenv("TAILENT_BUDGETS")) b.apply_overrides(env);
  return b;
}

std::string Budget::to_string() const {
  return "max_cover_elements=" + std::to_string(max_cover_elements) +
         ",delta_max_cells=" + std::to_string(delta_max_cells) +
         ",delta_max_targets=" + std::to_string(delta_max_targets) +
         ",vertex_max_points=" + std::to_string(vertex_max_points) +
         ",sft_max_words=" + std::to_string(sft_max_words);
}

}  // namespace tailent

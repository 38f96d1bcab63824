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

// Named example systems used by the suites, the tests and the CLI.

#ifndef TAILENT_CATALOG_HPP_
#define TAILENT_CATALOG_HPP_

#include <string>
#include <vector>

#include "tailent/model.hpp"
#include "tailent/symbolic.hpp"

namespace tailent {

// Omega = {0, 1}, P = (1/2, 1/2), theta swaps. E_0 = {a, b}, E_1 = {c, d};
// T_0 sends a, b to c; T_1 sends c to a and d to b. Discrete metric.
SystemPtr sys_a();

// One base point, fiber {p0, p1, p2, p3}, T the cycle p0 -> p1 -> p2 -> p3 -> p0.
// Discrete metric.
SystemPtr sys_b();

// Fiber {u, v} over `base` with identity maps.
SystemPtr static_pair(const DrivingSystem& base);

// Fiber {k0, k1, k2, k3} over `base`, each map the 4-cycle.
SystemPtr cycle4(const DrivingSystem& base);

struct ExtensionExample {
  std::string name;
  FactorMap pi;  // extension -> base system
};

// Extensions of SYS-A: the identity, SYS-A x static_pair, SYS-A x cycle4.
std::vector<ExtensionExample> extension_examples();

struct TheoremScenario {
  std::string name;
  SystemPtr g;  // H = G x E
  SystemPtr e;
};

// SYS-A x SYS-A, the one-point system times SYS-A, SYS-B x SYS-B.
std::vector<TheoremScenario> theorem_scenarios();

// Two full 2-shift components over a one-point base.
RandomSFT two_full_shifts();

// The golden mean shift over a one-point base.
RandomSFT golden_mean_shift();

}  // namespace tailent

#endif  // TAILENT_CATALOG_HPP_

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

// Random subshifts of finite type and cylinder-cover counting.
//
// A component c has alphabet {0..a_c-1} and a 0/1 matrix M_c(w) per base
// point. Its fiber over w is the set of one-sided sequences x with
// M_c(theta^i w)[x_i][x_{i+1}] = 1 for all i; the fiber map is the left shift.
// The fiber of the system is the product of its components.
//
// A cylinder cover (C, d) is the partition by the first d symbols of each
// component in C. Its n-th iterate is the partition by the first n + d - 1
// symbols. Because every matrix has a 1 in each row and column, every
// admissible word extends to a sequence and every symbol occurs at every
// position >= 1, so for R = (C_R, d_R) refining Q = (C_Q, d_Q)
//
//   N(R^(n) | Q^(n))(w) = prod_{c in C_R \ C_Q} W_c(w, L_R)
//                       * prod_{c in C_Q, L_R > L_Q} max_s X_c(w, s, L_Q, L_R)
//
// with L = n + d - 1, W_c(w, L) the number of admissible words of length L
// and X_c the number of admissible continuations of a word ending in s at
// position L_Q - 1 up to length L_R.

#ifndef TAILENT_SYMBOLIC_HPP_
#define TAILENT_SYMBOLIC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tailent/model.hpp"
#include "tailent/rational.hpp"
#include "tailent/tail_entropy.hpp"

namespace tailent {

using TransitionMatrix = std::vector<std::vector<std::uint8_t>>;

struct SftComponent {
  std::size_t alphabet = 0;
  std::vector<TransitionMatrix> matrices;  // one per base point
};

struct RandomSFT {
  DrivingSystem base;
  std::vector<SftComponent> components;
  std::string label;
};

// Shape and the no-dead-symbol condition, plus the driving system checks.
std::vector<std::string> validate_sft(const RandomSFT& sft);

// Components resolved by a cylinder cover and the cylinder depth.
struct CylinderCoverSpec {
  std::vector<std::size_t> components;
  std::size_t depth = 1;
};

// Sum of entries of M_c(w) M_c(theta w) ... M_c(theta^{n-2} w); a_c for n = 1.
BigInt admissible_word_count(const RandomSFT& sft, std::size_t component, std::size_t omega,
                             std::size_t n);

// N(R^(n) | Q^(n))(w) from the product formula above.
BigInt cylinder_relative_count(const RandomSFT& sft, const CylinderCoverSpec& r,
                               const CylinderCoverSpec& q, std::size_t omega, std::size_t n);

EntropyEstimate sft_tail_sequence(const RandomSFT& sft, const CylinderCoverSpec& r,
                                  const CylinderCoverSpec& q, std::size_t n_max);

// One component per matrix, each constant over the base.
RandomSFT constant_sft(const DrivingSystem& base, std::vector<TransitionMatrix> matrices,
                       std::string label = "");

TransitionMatrix full_shift_matrix(std::size_t alphabet);
TransitionMatrix golden_mean_matrix();

}  // namespace tailent

#endif  // TAILENT_SYMBOLIC_HPP_

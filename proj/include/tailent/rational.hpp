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

#ifndef TAILENT_RATIONAL_HPP_
#define TAILENT_RATIONAL_HPP_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tailent {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p" (optionally signed). Throws ParseError.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; integers are printed without a denominator.
std::string to_string(const Rational& value);

double to_double(const Rational& value);
double to_double(const BigInt& value);

// Natural logarithm of a positive big integer, accurate beyond 2^1024.
double log_of(const BigInt& value);

inline Rational abs_of(const Rational& value) {
  return value < 0 ? Rational(-value) : value;
}

}  // namespace tailent

#endif  // TAILENT_RATIONAL_HPP_

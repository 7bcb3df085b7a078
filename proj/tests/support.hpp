// Copyright 2026 The polya-sa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef POLYA_TESTS_SUPPORT_HPP
#define POLYA_TESTS_SUPPORT_HPP

#include <random>
#include <string_view>
#include <vector>

#include "polya/polynomial.hpp"
#include "polya/rational.hpp"

namespace polya::testing {

inline Rational Q(std::string_view text) { return parse_rational(text); }

/// Coefficients in increasing powers.
inline RatPoly P(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return RatPoly(std::move(c));
}

/// Random p/q in [0, 1] with q <= max_den.
inline Rational unit_rational(std::mt19937_64& rng, long max_den = 30) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(0, q);
  return make_rational(num(rng), q);
}

}  // namespace polya::testing

#endif  // POLYA_TESTS_SUPPORT_HPP

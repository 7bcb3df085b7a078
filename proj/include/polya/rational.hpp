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

#ifndef POLYA_RATIONAL_HPP
#define POLYA_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polya {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator) as long as it is built through the helpers below or through
/// mpq arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or a finite decimal such as "0.125" into an exact
/// rational. Throws std::invalid_argument on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// Formats as "p/q"; the denominator is always present ("3/1", "0/1").
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational make_rational(long numerator, long denominator = 1) {
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

inline Rational min(const Rational& lhs, const Rational& rhs) { return lhs < rhs ? lhs : rhs; }
inline Rational max(const Rational& lhs, const Rational& rhs) { return lhs < rhs ? rhs : lhs; }

/// Largest integer not exceeding the value.
Integer floor(const Rational& value);

/// The rational with the smallest denominator strictly inside (lo, hi).
/// Requires 0 <= lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace polya

#endif  // POLYA_RATIONAL_HPP

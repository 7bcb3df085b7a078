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

#ifndef POLYA_ROOTS_HPP
#define POLYA_ROOTS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "polya/polynomial.hpp"

namespace polya {

/// Closed interval [lo, hi] with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_strictly(const Rational& x) const { return lo < x && x < hi; }
  Rational width() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class RootLocation { Interior, LeftBoundary, RightBoundary };

/// A root of a polynomial in [0, 1].
///
/// Rational roots carry their exact value and a degenerate bracket [r, r].
/// Irrational roots carry an open isolating bracket (lo, hi) on which
/// `defining` is square-free with exactly one simple root and nonzero
/// endpoint values.
struct RootRecord {
  std::optional<Rational> exact;
  Interval bracket;
  double approx = 0.0;
  int multiplicity = 1;
  RootLocation location = RootLocation::Interior;
  RatPoly defining;

  bool is_rational() const { return exact.has_value(); }
};

struct RootIsolationOptions {
  /// Irrational brackets are bisected until narrower than this.
  Rational width = Rational(Integer(1), Integer("1000000000000"));
};

/// Yun's square-free factorization: returns (a_i, i) with p = c * prod a_i^i,
/// every a_i monic, square-free and pairwise coprime. Constant factors are
/// omitted.
std::vector<std::pair<RatPoly, int>> square_free_decomposition(const RatPoly& p);

/// Canonical Sturm sequence p, p', -rem(p, p'), ...
std::vector<RatPoly> sturm_sequence(const RatPoly& p);

/// Number of distinct real roots in the half-open interval (lo, hi] of the
/// square-free polynomial whose Sturm sequence is given.
int sturm_count(const std::vector<RatPoly>& sequence, const Rational& lo, const Rational& hi);

/// Every root of p in [0, 1] once, in increasing order, with multiplicity.
/// Throws std::invalid_argument on the zero polynomial.
std::vector<RootRecord> roots_in_unit_interval(const RatPoly& p,
                                               const RootIsolationOptions& options = {});

/// Exact sign of q at the root (-1, 0, +1).
int sign_at(const RatPoly& q, const RootRecord& root);

/// Signs of p immediately to the left and right of the root. p must vanish
/// at the root and must not be the zero polynomial.
std::pair<int, int> one_sided_signs(const RatPoly& p, const RootRecord& root);

/// Order of vanishing of p at the root (0 when p does not vanish there).
int vanishing_order(const RatPoly& p, const RootRecord& root);

/// Record for a known rational point, with location derived from the value.
RootRecord rational_point(const Rational& value, int multiplicity = 1);

}  // namespace polya

#endif  // POLYA_ROOTS_HPP

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

#include "polya/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace polya {
namespace {

const RatPoly kX = RatPoly::identity();
const RatPoly kXMinusOne = linear(Rational(1), Rational(-1));

RatPoly square_free_part(const RatPoly& p) {
  if (p.degree() < 1) return p;
  return monic(exact_div(p, gcd(p, derivative(p))));
}

// Scales p to coprime integer coefficients and returns |leading coefficient|.
Integer integer_leading_coefficient(const RatPoly& p) {
  Integer den_lcm = 1;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer num_gcd = 0;
  for (const auto& c : p.coeffs()) {
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Integer lead = p.leading().get_num() * (den_lcm / p.leading().get_den());
  lead /= num_gcd;
  return abs(lead);
}

Rational midpoint(const Interval& iv) {
  Rational m = (iv.lo + iv.hi) / 2;
  m.canonicalize();
  return m;
}

// One bisection step of a bracket holding a single simple root of `p` with
// nonzero endpoint values. Returns the exact root if the midpoint hits it.
std::optional<Rational> bisect_once(const RatPoly& p, Interval& iv) {
  Rational mid = midpoint(iv);
  const int s_mid = sgn(p(mid));
  if (s_mid == 0) return mid;
  if (s_mid == sgn(p(iv.lo))) {
    iv.lo = mid;
  } else {
    iv.hi = mid;
  }
  return std::nullopt;
}

struct Isolated {
  std::optional<Rational> exact;
  Interval bracket;
};

// Isolates the n roots of the square-free `s` in the open interval (lo, hi);
// s(lo) and s(hi) are nonzero.
void isolate(const RatPoly& s, const std::vector<RatPoly>& seq, const Rational& lo,
             const Rational& hi, int n, std::vector<Isolated>& out) {
  if (n <= 0) return;
  if (n == 1) {
    out.push_back({std::nullopt, Interval{lo, hi}});
    return;
  }
  Rational mid = midpoint(Interval{lo, hi});
  if (sgn(s(mid)) != 0) {
    const int left = sturm_count(seq, lo, mid);
    isolate(s, seq, lo, mid, left, out);
    isolate(s, seq, mid, hi, n - left, out);
    return;
  }
  out.push_back({mid, Interval{mid, mid}});
  Rational delta = (hi - lo) / 4;
  while (true) {
    Rational a = mid - delta;
    Rational b = mid + delta;
    if (sgn(s(a)) != 0 && sgn(s(b)) != 0 && sturm_count(seq, a, b) == 1) break;
    delta /= 2;
  }
  const Rational a = mid - delta;
  const Rational b = mid + delta;
  const int left = sturm_count(seq, lo, a);
  isolate(s, seq, lo, a, left, out);
  isolate(s, seq, b, hi, n - 1 - left, out);
}

// Decides whether the single root of `s` in the open bracket is rational and
// narrows the bracket to `width` otherwise.
void resolve(const RatPoly& s, Isolated& item, const Rational& width) {
  const Integer lc = integer_leading_coefficient(s);
  // Two distinct fractions with denominators <= lc differ by at least 1/lc^2,
  // and a rational root of s has denominator dividing lc.
  const Rational separation(Integer(1), lc * lc);
  while (!(item.bracket.width() < separation)) {
    if (auto hit = bisect_once(s, item.bracket)) {
      item.exact = *hit;
      item.bracket = Interval{*hit, *hit};
      return;
    }
  }
  Rational candidate = simplest_between(item.bracket.lo, item.bracket.hi);
  if (sgn(s(candidate)) == 0) {
    item.exact = candidate;
    item.bracket = Interval{candidate, candidate};
    return;
  }
  while (item.bracket.width() > width) {
    if (auto hit = bisect_once(s, item.bracket)) {
      // Unreachable for an irrational root; kept for safety of the loop.
      item.exact = *hit;
      item.bracket = Interval{*hit, *hit};
      return;
    }
  }
}

RootLocation location_of(const Rational& value) {
  if (sgn(value) == 0) return RootLocation::LeftBoundary;
  if (value == 1) return RootLocation::RightBoundary;
  return RootLocation::Interior;
}

// Narrows an irrational root's bracket (using its defining polynomial) until
// the predicate holds.
template <class Pred>
Interval refine_until(const RootRecord& root, Pred done) {
  Interval iv = root.bracket;
  while (!done(iv)) {
    if (bisect_once(root.defining, iv)) {
      throw std::logic_error("irrational root bracket hit an exact root of its defining factor");
    }
  }
  return iv;
}

}  // namespace

std::vector<std::pair<RatPoly, int>> square_free_decomposition(const RatPoly& p) {
  std::vector<std::pair<RatPoly, int>> out;
  if (p.degree() < 1) return out;
  const RatPoly dp = derivative(p);
  const RatPoly a0 = gcd(p, dp);
  RatPoly b = exact_div(p, a0);
  RatPoly c = exact_div(dp, a0);
  RatPoly d = c - derivative(b);
  int i = 1;
  while (b.degree() >= 1) {
    RatPoly a = gcd(b, d);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - derivative(b);
    if (a.degree() >= 1) out.emplace_back(std::move(a), i);
    ++i;
  }
  return out;
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  RatPoly next = derivative(p);
  while (!next.is_zero()) {
    seq.push_back(next);
    next = -divmod(seq[seq.size() - 2], seq.back()).second;
  }
  return seq;
}

namespace {
int sign_variations(const std::vector<RatPoly>& seq, const Rational& x) {
  int variations = 0;
  int previous = 0;
  for (const auto& q : seq) {
    const int s = sgn(q(x));
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++variations;
    previous = s;
  }
  return variations;
}
}  // namespace

int sturm_count(const std::vector<RatPoly>& sequence, const Rational& lo, const Rational& hi) {
  return sign_variations(sequence, lo) - sign_variations(sequence, hi);
}

RootRecord rational_point(const Rational& value, int multiplicity) {
  RootRecord r;
  r.exact = value;
  r.bracket = Interval{value, value};
  r.approx = value.get_d();
  r.multiplicity = multiplicity;
  r.location = location_of(value);
  r.defining = linear(Rational(1), -value);
  return r;
}

std::vector<RootRecord> roots_in_unit_interval(const RatPoly& p,
                                               const RootIsolationOptions& options) {
  if (p.is_zero()) {
    throw std::invalid_argument("roots_in_unit_interval: zero polynomial has no isolated roots");
  }
  std::vector<RootRecord> roots;
  const auto factors = square_free_decomposition(p);
  if (factors.empty()) return roots;

  auto multiplicity_at = [&](const Rational& x) {
    for (const auto& [factor, m] : factors) {
      if (sgn(factor(x)) == 0) return m;
    }
    throw std::logic_error("rational root not found among square-free factors");
  };

  RatPoly inner = square_free_part(p);
  for (const Rational& edge : {Rational(0), Rational(1)}) {
    if (sgn(inner(edge)) == 0) {
      roots.push_back(rational_point(edge, multiplicity_at(edge)));
      inner = exact_div(inner, edge == 0 ? kX : kXMinusOne);
    }
  }

  if (inner.degree() >= 1) {
    const auto seq = sturm_sequence(inner);
    std::vector<Isolated> found;
    isolate(inner, seq, Rational(0), Rational(1), sturm_count(seq, Rational(0), Rational(1)),
            found);
    for (auto& item : found) {
      if (!item.exact) resolve(inner, item, options.width);
      if (item.exact) {
        roots.push_back(rational_point(*item.exact, multiplicity_at(*item.exact)));
        continue;
      }
      RootRecord r;
      r.bracket = item.bracket;
      r.approx = midpoint(item.bracket).get_d();
      r.location = RootLocation::Interior;
      for (const auto& [factor, m] : factors) {
        const int s_lo = sgn(factor(item.bracket.lo));
        const int s_hi = sgn(factor(item.bracket.hi));
        if (s_lo != 0 && s_hi != 0 && s_lo != s_hi) {
          r.multiplicity = m;
          r.defining = factor;
          break;
        }
      }
      if (r.defining.is_zero()) throw std::logic_error("irrational root without defining factor");
      roots.push_back(std::move(r));
    }
  }

  std::sort(roots.begin(), roots.end(), [](const RootRecord& a, const RootRecord& b) {
    return a.bracket.lo < b.bracket.lo;
  });
  return roots;
}

int sign_at(const RatPoly& q, const RootRecord& root) {
  if (root.is_rational()) return sgn(q(*root.exact));
  if (q.degree() < 1) return sgn(q.leading());
  const RatPoly common = gcd(q, root.defining);
  if (common.degree() >= 1) {
    const int s_lo = sgn(common(root.bracket.lo));
    const int s_hi = sgn(common(root.bracket.hi));
    if (s_lo != 0 && s_hi != 0 && s_lo != s_hi) return 0;
  }
  const auto seq = sturm_sequence(square_free_part(q));
  const Interval iv = refine_until(root, [&](const Interval& candidate) {
    return sturm_count(seq, candidate.lo, candidate.hi) == 0;
  });
  return sgn(q(iv.hi));
}

int vanishing_order(const RatPoly& p, const RootRecord& root) {
  if (p.is_zero()) throw std::invalid_argument("vanishing_order: zero polynomial");
  RatPoly d = p;
  int order = 0;
  while (sign_at(d, root) == 0) {
    d = derivative(d);
    ++order;
  }
  return order;
}

std::pair<int, int> one_sided_signs(const RatPoly& p, const RootRecord& root) {
  const int m = vanishing_order(p, root);
  if (m == 0) throw std::invalid_argument("one_sided_signs: polynomial does not vanish at point");
  if (root.is_rational()) {
    RatPoly d = p;
    for (int k = 0; k < m; ++k) d = derivative(d);
    const int right = sgn(d(*root.exact));
    const int left = (m % 2 == 0) ? right : -right;
    return {left, right};
  }
  const auto seq = sturm_sequence(square_free_part(p));
  const Interval iv = refine_until(root, [&](const Interval& candidate) {
    return sturm_count(seq, candidate.lo, candidate.hi) == 1 && sgn(p(candidate.lo)) != 0 &&
           sgn(p(candidate.hi)) != 0;
  });
  return {sgn(p(iv.lo)), sgn(p(iv.hi))};
}

}  // namespace polya

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

#ifndef POLYA_POLYNOMIAL_HPP
#define POLYA_POLYNOMIAL_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polya/rational.hpp"

namespace polya {

namespace detail {
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(double v) { return v == 0.0; }
}  // namespace detail

/// Dense univariate polynomial; coeffs()[k] multiplies x^k. Trailing zero
/// coefficients are always trimmed, so the zero polynomial has no
/// coefficients and degree -1.
template <class Scalar>
class Polynomial {
 public:
  using scalar_type = Scalar;

  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(Scalar c) { return Polynomial(std::vector<Scalar>{std::move(c)}); }
  static Polynomial monomial(Scalar c, std::size_t power) {
    std::vector<Scalar> v(power + 1, Scalar(0));
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial identity() { return monomial(Scalar(1), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  Scalar coeff(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Scalar(0);
  }
  Scalar leading() const { return coeffs_.empty() ? Scalar(0) : coeffs_.back(); }

  /// Horner evaluation.
  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Scalar(0));
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Scalar(0));
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator-(Polynomial p) { return p *= Scalar(-1); }
  friend Polynomial operator*(Polynomial p, const Scalar& s) { return p *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial p) { return p *= s; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<Scalar> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
        out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
      }
    }
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && detail::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

using RatPoly = Polynomial<Rational>;
using RealPoly = Polynomial<double>;

template <class Scalar>
Scalar eval(const Polynomial<Scalar>& p, const Scalar& x) {
  return p(x);
}

template <class Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar>& p) {
  if (p.degree() < 1) return {};
  std::vector<Scalar> out(static_cast<std::size_t>(p.degree()));
  for (std::size_t k = 1; k < p.coeffs().size(); ++k) {
    out[k - 1] = p.coeffs()[k] * Scalar(static_cast<long>(k));
  }
  return Polynomial<Scalar>(std::move(out));
}

/// p(q(x)).
template <class Scalar>
Polynomial<Scalar> compose(const Polynomial<Scalar>& p, const Polynomial<Scalar>& q) {
  Polynomial<Scalar> acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc = acc * q + Polynomial<Scalar>::constant(*it);
  }
  return acc;
}

template <class Scalar>
Polynomial<Scalar> pow(const Polynomial<Scalar>& p, unsigned exponent) {
  Polynomial<Scalar> out = Polynomial<Scalar>::constant(Scalar(1));
  for (unsigned i = 0; i < exponent; ++i) out = out * p;
  return out;
}

/// Euclidean division over a field: num = q * den + r with deg r < deg den.
template <class Scalar>
std::pair<Polynomial<Scalar>, Polynomial<Scalar>> divmod(const Polynomial<Scalar>& num,
                                                         const Polynomial<Scalar>& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Scalar> rem = num.coeffs();
  const int dd = den.degree();
  if (num.degree() < dd) return {Polynomial<Scalar>{}, num};
  std::vector<Scalar> quot(static_cast<std::size_t>(num.degree() - dd + 1), Scalar(0));
  const Scalar lead = den.leading();
  for (int k = num.degree() - dd; k >= 0; --k) {
    const auto top = static_cast<std::size_t>(k + dd);
    Scalar factor = rem[top] / lead;
    quot[static_cast<std::size_t>(k)] = factor;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= factor * den.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial<Scalar>(std::move(quot)), Polynomial<Scalar>(std::move(rem))};
}

template <class Scalar>
Polynomial<Scalar> monic(Polynomial<Scalar> p) {
  if (p.is_zero()) return p;
  Scalar inv = Scalar(1) / p.leading();
  return p *= inv;
}

/// Monic greatest common divisor; gcd(0, 0) is the zero polynomial.
template <class Scalar>
Polynomial<Scalar> gcd(Polynomial<Scalar> a, Polynomial<Scalar> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

/// Exact quotient; throws if den does not divide num.
template <class Scalar>
Polynomial<Scalar> exact_div(const Polynomial<Scalar>& num, const Polynomial<Scalar>& den) {
  auto [q, r] = divmod(num, den);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

inline RealPoly to_real(const RatPoly& p) {
  std::vector<double> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.get_d());
  return RealPoly(std::move(out));
}

/// Linear polynomial slope * x + intercept.
inline RatPoly linear(const Rational& slope, const Rational& intercept) {
  return RatPoly({intercept, slope});
}

}  // namespace polya

#endif  // POLYA_POLYNOMIAL_HPP

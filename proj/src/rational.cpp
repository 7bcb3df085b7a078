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

#include "polya/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace polya {
namespace {

std::string trim(std::string_view text) {
  auto begin = text.find_first_not_of(" \t\n\r");
  if (begin == std::string_view::npos) return {};
  auto end = text.find_last_not_of(" \t\n\r");
  return std::string(text.substr(begin, end - begin + 1));
}

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

Integer parse_integer(const std::string& s, std::string_view original) {
  if (!is_integer_literal(s)) {
    throw std::invalid_argument("malformed rational: '" + std::string(original) + "'");
  }
  return Integer(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(trim(std::string_view(s).substr(0, slash)), text);
    Integer den = parse_integer(trim(std::string_view(s).substr(slash + 1)), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
    if (frac.empty() || !std::all_of(frac.begin(), frac.end(),
                                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    Integer int_part = parse_integer(whole, text);
    Integer frac_part(frac, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational r(frac_part, scale);
    r.canonicalize();
    return negative ? Rational(Rational(int_part) - r) : Rational(Rational(int_part) + r);
  }
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi) || sgn(lo) < 0) {
    throw std::invalid_argument("simplest_between requires 0 <= lo < hi");
  }
  const Integer n = floor(lo);
  if (Rational(n + 1) < hi) return Rational(n + 1);
  // n <= lo < hi <= n + 1
  const Rational offset_hi = hi - Rational(n);
  if (lo == Rational(n)) {
    Integer k = floor(Rational(1) / offset_hi) + 1;
    return Rational(n) + Rational(Integer(1), k);
  }
  const Rational offset_lo = lo - Rational(n);
  Rational inner = simplest_between(Rational(1) / offset_hi, Rational(1) / offset_lo);
  Rational result = Rational(n) + Rational(1) / inner;
  result.canonicalize();
  return result;
}

}  // namespace polya

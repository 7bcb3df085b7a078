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


#include "polya/selftest.hpp"

#include <exception>
#include <optional>

namespace polya {
namespace {

using Check = std::function<std::optional<std::string>(std::mt19937_64&)>;

SuiteResult run_suite(std::string name, std::size_t cases, std::mt19937_64& rng, const Check& check) {
  SuiteResult out;
  out.name = std::move(name);
  for (std::size_t i = 0; i < cases; ++i) {
    ++out.cases;
    std::optional<std::string> failure;
    try {
      failure = check(rng);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure) {
      if (out.failures == 0) out.first_failure = "case " + std::to_string(i) + ": " + *failure;
      ++out.failures;
    }
  }
  return out;
}

std::string describe(const ReplacementMatrixTwo& m) {
  return "(" + to_string(m.a) + "," + to_string(m.b) + "," + to_string(m.c) + "," + to_string(m.d) + "," +
         to_string(m.e) + "," + to_string(m.f) + ")";
}

// Random point strictly inside (0, 1).
Rational random_unit_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(2, 40);
  const int q = den(rng);
  std::uniform_int_distribution<int> num(1, q - 1);
  return make_rational(num(rng), q);
}

// Random urn state; `whole_balls` keeps both counts at least one.
UrnState random_state(std::mt19937_64& rng, bool whole_balls) {
  UrnState s;
  if (whole_balls) {
    s.white = 1 + random_rational(rng, 40, 4);
    s.black = 1 + random_rational(rng, 40, 4);
  } else {
    s.white = random_positive_rational(rng, 40, 4);
    s.black = random_positive_rational(rng, 40, 4);
  }
  return s;
}

}  // namespace

Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(0, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  const int p = num(rng);
  return Rational(p, 1) / den(rng);
}

Rational random_positive_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), 1) / den(rng);
}

ReplacementMatrixOne random_matrix_one(std::mt19937_64& rng) {
  ReplacementMatrixOne m;
  do {
    m = {random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
  } while (sgn(m.a + m.b) == 0 || sgn(m.c + m.d) == 0);
  return m;
}

ReplacementMatrixTwo random_matrix_two(std::mt19937_64& rng) {
  ReplacementMatrixTwo m;
  do {
    m = {random_rational(rng), random_rational(rng), random_rational(rng),
         random_rational(rng), random_rational(rng), random_rational(rng)};
  } while (sgn(m.a + m.b) == 0 || sgn(m.c + m.d) == 0 || sgn(m.e + m.f) == 0);
  return m;
}

ReplacementMatrixTwo random_degenerate_two(std::mt19937_64& rng, int case_id) {
  auto pos = [&] { return random_positive_rational(rng); };
  switch (case_id) {
    case 4: return {0, 0, pos(), pos(), pos(), pos()};
    case 5: return {pos(), pos(), pos(), pos(), 0, 0};
    case 6: return {pos(), pos(), 0, 0, pos(), pos()};
    default: throw std::invalid_argument("random_degenerate_two: case must be 4, 5 or 6");
  }
}

Table1 mutated_table1(const ReplacementMatrixTwo& m) {
  Table1 t = table1_polys(m);
  t[1][3] += 1;
  return t;
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<SuiteResult> out;
  const RatPoly x = RatPoly::identity();
  const RatPoly one_minus_x = linear(Rational(-1), Rational(1));

  // Columns cancel, and each column is the expansion of
  // E_n[(dW - Z dT - g) I_j] with squared or cross draw probabilities.
  out.push_back(run_suite("table1", options.matrices, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixTwo m = random_matrix_two(r);
    const Table1 t = options.table1(m);
    const RatPoly g = drift_two(m);
    const std::array<RatPoly, 3> direct{
        (linear(-(m.a + m.b), m.a) - g) * x * x,
        (linear(-(m.c + m.d), m.c) - g) * x * one_minus_x * Rational(2),
        (linear(-(m.e + m.f), m.e) - g) * one_minus_x * one_minus_x};
    for (std::size_t k = 0; k < 6; ++k) {
      if (sgn(t[0][k] + t[1][k] + t[2][k]) != 0) {
        return "column " + std::to_string(k) + " does not cancel for " + describe(m);
      }
      for (std::size_t j = 0; j < 3; ++j) {
        if (t[j][k] != direct[j].coeff(static_cast<int>(k))) {
          return "C_" + std::to_string(k) + "^(" + std::to_string(j + 1) + ") disagrees with the expansion for " +
                 describe(m);
        }
      }
    }
    return std::nullopt;
  }));

  out.push_back(run_suite("psi-quartic", options.matrices, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixTwo m = random_matrix_two(r);
    const ErrorTwo e = error_two(m);
    const RatPoly decomposed = Rational(2) * x * x * (e.A + e.C) * (e.A + e.C) +
                               x * one_minus_x * e.B * e.B +
                               Rational(2) * one_minus_x * one_minus_x * e.C * e.C;
    if (!(decomposed == psi_explicit_quartic(m))) return "decomposition differs from quartic for " + describe(m);
    return std::nullopt;
  }));

  out.push_back(run_suite("linear-relation", options.matrices, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixTwo m = random_matrix_two(r);
    const ErrorTwo e = error_two(m);
    if (!(e.A == e.B - Rational(2) * e.C)) return "A != B - 2C for " + describe(m);
    return std::nullopt;
  }));

  out.push_back(run_suite("boundary-signs", options.matrices, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixTwo m = random_matrix_two(r);
    const RatPoly g = drift_two(m);
    if (sgn(g(Rational(0))) < 0 || sgn(g(Rational(1))) > 0) return "drift points outward at a boundary for " + describe(m);
    const RatPoly f = drift_one(random_matrix_one(r));
    if (sgn(f(Rational(0))) < 0 || sgn(f(Rational(1))) > 0) return "one-draw drift points outward at a boundary";
    return std::nullopt;
  }));

  // Case 4: (1/2)(1 + x)^2 g_hat(2x / (x + 1)) = g(x) / (1 - x) on [0, 1).
  out.push_back(run_suite("ghat-case4", options.matrices, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixTwo m = random_degenerate_two(r, 4);
    const RatPoly g_hat = g_hat_case4(m);
    const RatPoly g = drift_two(m);
    for (std::size_t i = 0; i < options.points_per_matrix; ++i) {
      const Rational p = i == 0 ? Rational(0) : random_unit_point(r);
      const Rational lhs = Rational(1, 2) * (1 + p) * (1 + p) * g_hat(case4_to_hat(p));
      if (lhs != g(p) / (1 - p)) return "identity fails at x = " + to_string(p) + " for " + describe(m);
      if (case4_from_hat(case4_to_hat(p)) != p) return "change of variables is not inverted";
    }
    degenerate_reduce(m);
    return std::nullopt;
  }));

  // Case 6: (x^2 + (1 - x)^2) g_hat(x) = g(x).
  out.push_back(run_suite("ghat-case6", options.matrices, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixTwo m = random_degenerate_two(r, 6);
    const RatPoly g = drift_two(m);
    for (std::size_t i = 0; i < options.points_per_matrix; ++i) {
      const Rational p = i == 0 ? Rational(0) : i == 1 ? Rational(1) : random_unit_point(r);
      if ((p * p + (1 - p) * (1 - p)) * g_hat_case6(m, p) != g(p)) {
        return "identity fails at x = " + to_string(p) + " for " + describe(m);
      }
    }
    degenerate_reduce(m);
    return std::nullopt;
  }));

  out.push_back(run_suite("cond-iv-one-draw", options.oracle_pairs, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixOne m = random_matrix_one(r);
    const UrnState s = random_state(r, false);
    const Rational closed = cond_iv_closed_form_one(s, m);
    const Rational oracle = cond_moments_oracle(s, OneDrawModel{m, s.white, s.black}).mean_u_over_t;
    if (closed != oracle) return "closed form " + to_string(closed) + " != oracle " + to_string(oracle);
    return std::nullopt;
  }));

  // E_n U_{n+1} is zero with replacement and the R_n remainder without.
  out.push_back(run_suite("two-draw-remainder", options.oracle_pairs, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixTwo m = random_matrix_two(r);
    const UrnState s = random_state(r, true);
    const Rational without =
        cond_moments_oracle(s, TwoDrawModel{m, s.white, s.black, Sampling::WithoutReplacement}).mean_u;
    if (without != two_draw_remainder(s, m)) return "E U != R_n for " + describe(m);
    const Rational with = cond_moments_oracle(s, TwoDrawModel{m, s.white, s.black, Sampling::WithReplacement}).mean_u;
    if (sgn(with) != 0) return "E U nonzero with replacement for " + describe(m);
    return std::nullopt;
  }));

  // E_n[U / T_{n+1}] = sum_j (p_j(Z) + R_j) / (T + t_j) with the table's p_j.
  out.push_back(run_suite("cond-iv-two-draw", options.oracle_pairs, rng, [&](std::mt19937_64& r) -> std::optional<std::string> {
    const ReplacementMatrixTwo m = random_matrix_two(r);
    const UrnState s = random_state(r, true);
    const Table1 t = options.table1(m);
    const auto rem = table1_remainders(m);
    const std::array<Rational, 3> sums{m.a + m.b, m.c + m.d, m.e + m.f};
    const Rational total = s.total();
    const Rational z = s.white / total;
    for (const Sampling sampling : {Sampling::WithReplacement, Sampling::WithoutReplacement}) {
      Rational closed = 0;
      for (std::size_t j = 0; j < 3; ++j) {
        Rational p = RatPoly(std::vector<Rational>(t[j].begin(), t[j].end()))(z);
        if (sampling == Sampling::WithoutReplacement) p += z * (1 - z) / (total - 1) * rem[j](z);
        closed += p / (total + sums[j]);
      }
      const Rational oracle = cond_moments_oracle(s, TwoDrawModel{m, s.white, s.black, sampling}).mean_u_over_t;
      if (closed != oracle) return "table form differs from oracle for " + describe(m);
    }
    return std::nullopt;
  }));

  return out;
}

}  // namespace polya

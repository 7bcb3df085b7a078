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

#ifndef POLYA_URNS_HPP
#define POLYA_URNS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "polya/roots.hpp"
#include "polya/sa.hpp"

namespace polya {

/// One ball drawn; row W is added when white is drawn, row B when black is.
///
///        W  B
///   W  ( a  b )
///   B  ( c  d )
struct ReplacementMatrixOne {
  Rational a, b, c, d;

  /// Throws std::invalid_argument on a negative entry or an all-zero matrix.
  void validate() const;
  friend bool operator==(const ReplacementMatrixOne&, const ReplacementMatrixOne&) = default;
};

/// Two balls drawn; rows WW, WB, BB.
struct ReplacementMatrixTwo {
  Rational a, b, c, d, e, f;

  void validate() const;
  /// Matrix of the same urn with the colors renamed.
  ReplacementMatrixTwo color_swapped() const { return {f, e, d, c, b, a}; }
  friend bool operator==(const ReplacementMatrixTwo&, const ReplacementMatrixTwo&) = default;
};

enum class Sampling { WithReplacement, WithoutReplacement };

struct OneDrawModel {
  ReplacementMatrixOne matrix;
  Rational w0 = 1;
  Rational b0 = 1;
};

struct TwoDrawModel {
  ReplacementMatrixTwo matrix;
  Rational w0 = 2;
  Rational b0 = 2;
  Sampling sampling = Sampling::WithoutReplacement;
};

using UrnModel = std::variant<OneDrawModel, TwoDrawModel>;

/// Validates the matrix and the initial composition.
void validate(const UrnModel& model);

struct UrnState {
  Rational white;
  Rational black;
  std::uint64_t step = 0;

  Rational total() const { return white + black; }
  Rational fraction() const { return white / total(); }
};

UrnState initial_state(const UrnModel& model);

enum class Outcome { White, Black, WhiteWhite, WhiteBlack, BlackBlack };
std::string_view to_string(Outcome outcome);

struct StepOutcome {
  Outcome label;
  Rational probability;
  Rational d_white;
  Rational d_total;
};

/// Exact one-step law; probabilities sum to one.
using StepDistribution = std::vector<StepOutcome>;

StepDistribution step_distribution(const UrnState& state, const UrnModel& model);

// --- one draw -------------------------------------------------------------

RatPoly drift_one(const ReplacementMatrixOne& m);

struct ErrorOne {
  RatPoly psi;    // a - c + (c + d - a - b) x
  RatPoly error;  // x (1 - x) psi^2
};

ErrorOne error_one(const ReplacementMatrixOne& m);

/// Closed form of E_n[U_{n+1} / T_{n+1}].
Rational cond_iv_closed_form_one(const UrnState& state, const ReplacementMatrixOne& m);

/// Almost-sure limit when one row sum vanishes. Throws when both are positive.
Rational drift_one_degenerate(const ReplacementMatrixOne& m);

// --- two draws ------------------------------------------------------------

RatPoly drift_two(const ReplacementMatrixTwo& m);

struct ErrorTwo {
  RatPoly A, B, C;
  RatPoly psi;    // 2x^2 (A+C)^2 + x(1-x) B^2 + 2(1-x)^2 C^2
  RatPoly error;  // x (1 - x) psi
};

/// Linear forms and the quartic; throws std::logic_error if A != B - 2C or
/// the decomposition disagrees with the expanded quartic.
ErrorTwo error_two(const ReplacementMatrixTwo& m);

/// The quartic written out coefficient by coefficient.
RatPoly psi_explicit_quartic(const ReplacementMatrixTwo& m);

/// Remainder E_n Y_{n+1} - g(Z_n) when sampling without replacement.
Rational two_draw_remainder(const UrnState& state, const ReplacementMatrixTwo& m);

/// table[j][k] = C_k^{(j+1)}, the coefficient of Z^k in p_{j+1}.
using Table1 = std::array<std::array<Rational, 6>, 3>;

/// Throws std::logic_error unless every column sums to zero.
Table1 table1_polys(const ReplacementMatrixTwo& m);

/// Per-outcome remainder polynomials R_j(n) * (T - 1) / (Z (1 - Z)).
std::array<RatPoly, 3> table1_remainders(const ReplacementMatrixTwo& m);

/// [L, U] spanned by the row ratios; every row sum must be positive.
Interval attainable_interval(const ReplacementMatrixTwo& m);

/// Result of the t_min = 0 case analysis.
struct DegenerateReduction {
  int case_id = 0;  // 1..6
  /// Almost-sure limit for cases 1-3.
  std::optional<Rational> limit;
  /// Cases 4 and 5: drift of the time-changed process (case 5 in swapped colors).
  std::optional<RatPoly> g_hat;
  /// Case 6: g_hat = g_hat_numerator / (x^2 + (1 - x)^2).
  std::optional<RatPoly> g_hat_numerator;
  /// Leading error polynomial of the time-changed process pulled back to x
  /// (same sign as the true error on [0, 1]).
  std::optional<RatPoly> error_pullback;
};

/// Classifies and reduces a matrix with a zero row sum. Cases 4-6 check the
/// identity relating g_hat and g at 20 sample points and throw
/// std::logic_error on mismatch.
DegenerateReduction degenerate_reduce(const ReplacementMatrixTwo& m);

/// Degenerate case id 1..6, or 0 when every row sum is positive.
int degenerate_case(const ReplacementMatrixTwo& m);

/// Case 4 drift of the time-changed process, from its own formula.
RatPoly g_hat_case4(const ReplacementMatrixTwo& m);

/// Case 6 drift of the time-changed process evaluated from its own formula.
Rational g_hat_case6(const ReplacementMatrixTwo& m, const Rational& x);

/// Case 4 change of variables y = 2x / (x + 1) and its inverse.
Rational case4_to_hat(const Rational& x);
Rational case4_from_hat(const Rational& y);

/// Case 4 time-changed chain: (T_hat, Z_hat) = (B + 2W - 1, 2W / T_hat).
std::pair<Rational, Rational> case4_transform(const UrnState& state);

// --- both models ----------------------------------------------------------

struct ConditionalMoments {
  Rational mean_dz;
  Rational mean_y;
  Rational mean_u;
  Rational mean_u2;
  Rational mean_u_over_t;
};

/// Brute-force enumeration over the outcomes of one step.
ConditionalMoments cond_moments_oracle(const UrnState& state, const UrnModel& model);

enum class ModelKind { OneDraw, TwoDrawWithReplacement, TwoDrawWithoutReplacement };
std::string_view to_string(ModelKind kind);

struct ModelMeta {
  ModelKind kind = ModelKind::OneDraw;
  Rational t_min;
  Rational t_max;
  /// Constant of the relaxed martingale condition; zero when t_min = 0.
  Rational K_e;
  std::optional<Interval> attainable;
  int degenerate_case = 0;
  bool white_diverges = false;
  bool black_diverges = false;
  FlatFamily flat_family = FlatFamily::None;
};

ModelMeta model_meta(const UrnModel& model);

/// Constants of the stochastic approximation representation; empty when
/// t_min = 0.
std::optional<SAConditions> sa_conditions(const UrnModel& model);

RatPoly drift(const UrnModel& model);

}  // namespace polya

#endif  // POLYA_URNS_HPP

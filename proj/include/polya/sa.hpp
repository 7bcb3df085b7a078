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

#ifndef POLYA_SA_HPP
#define POLYA_SA_HPP

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "polya/roots.hpp"

namespace polya {

/// Constants of a one-dimensional stochastic approximation
/// X_{n+1} - X_n = gamma_{n+1} [f(X_n) + U_{n+1}] with
/// c_l/n <= gamma_n <= c_u/n, |U_n| <= K_u, |f| <= K_f and
/// |E_n(gamma_{n+1} U_{n+1})| <= K_e gamma_n^2.
struct SAConditions {
  Rational c_l;
  Rational c_u;
  Rational K_u;
  Rational K_f;
  Rational K_e;
  Rational K_delta;  // c_u * (K_f + K_u)
};

/// Validates positivity and c_l <= c_u, and fills K_delta.
SAConditions make_sa_conditions(Rational c_l, Rational c_u, Rational K_u, Rational K_f,
                                Rational K_e);

enum class EquilibriumClass { Stable, StrictlyUnstable, Touchpoint, FlatDrift, WeaklyUnstableBoundary };

std::string_view to_string(EquilibriumClass cls);

struct Equilibrium {
  RootRecord root;
  EquilibriumClass cls = EquilibriumClass::Stable;
  /// Exact drift slope at rational roots; empty at irrational roots.
  std::optional<Rational> derivative_at_root;
  int derivative_sign = 0;
};

/// Classifies a root of a nonzero drift by the sign of the drift on either
/// side. Throws std::invalid_argument if the point is not a root or the drift
/// is identically zero.
Equilibrium classify(const RatPoly& drift, const RootRecord& root);

/// True iff the leading error polynomial is strictly positive at the point,
/// i.e. the noise is bounded below near it.
bool check_noise_floor(const RatPoly& error_fn, const RootRecord& point);

enum class Boundary { Zero, One };

/// Applicability of the boundary non-convergence theorem at a strictly
/// unstable boundary root: drift and error both vanish there and the count of
/// the color that keeps the process off the boundary grows without bound.
/// Throws std::invalid_argument unless `boundary` is a strictly unstable root.
bool check_renlund(const RatPoly& drift, const RatPoly& error_fn, Boundary boundary,
                   bool count_diverges);

enum class LimitKind { PointMassSet, BetaDistribution, ContinuousNoAtoms, Unknown };
enum class Verdict { ConvergesUnique, PositiveProbability, PossibleTouchpoint, Unknown };

/// Results the predictions are derived from. Identifiers are stable strings.
enum class Theorem { Main, Pem, Renlund, Stable, Pem2, H1, TwoDrag };

std::string_view to_string(LimitKind kind);
std::string_view to_string(Verdict verdict);
std::string_view to_string(Theorem theorem);
LimitKind limit_kind_from_string(std::string_view text);
Verdict verdict_from_string(std::string_view text);
Theorem theorem_from_string(std::string_view text);
EquilibriumClass equilibrium_class_from_string(std::string_view text);

struct PointVerdict {
  RootRecord point;
  EquilibriumClass cls = EquilibriumClass::Stable;
  Verdict verdict = Verdict::Unknown;
  std::vector<Theorem> citations;
};

struct ExcludedPoint {
  RootRecord point;
  EquilibriumClass cls = EquilibriumClass::StrictlyUnstable;
  Theorem reason = Theorem::Main;
};

struct LimitPrediction {
  LimitKind kind = LimitKind::Unknown;
  std::vector<PointVerdict> certain_points;
  std::vector<ExcludedPoint> excluded_points;
  std::optional<std::pair<Rational, Rational>> beta_params;
  std::vector<Theorem> citations;
};

/// Families whose drift vanishes identically.
enum class FlatFamily { None, ClassicalPolya, TwoDrawPolya };

/// Boundary facts known from a time-changed process rather than the drift.
enum class BoundaryNote {
  None,
  /// The time-changed drift does not vanish here; excluded by theorem:main.
  NotALimitOfTimeChange,
  /// Sign of the time-changed drift is not determined to leading order.
  Undetermined,
};

/// Model facts the decision procedure needs beyond the two polynomials.
struct ModelFlags {
  FlatFamily flat_family = FlatFamily::None;
  /// (w0/a, b0/a) for the classical family.
  std::optional<std::pair<Rational, Rational>> beta_params;
  bool white_diverges = false;
  bool black_diverges = false;
  BoundaryNote at_zero = BoundaryNote::None;
  BoundaryNote at_one = BoundaryNote::None;
};

/// Theorem-driven description of the support of lim X_n.
///
/// Flat drifts map to the Beta law (classical family) or to "continuous, no
/// atoms" (two-draw family). Otherwise every root in [0, 1] is classified and
/// listed exactly once: strictly unstable roots are excluded when a
/// non-convergence theorem applies, stable roots inside the attainable
/// interval get positive probability, touchpoints strictly inside it are
/// possible limits, and everything else is kept with verdict Unknown. A single
/// surviving root is the almost-sure limit.
LimitPrediction predict_limit(const RatPoly& drift, const RatPoly& error_fn,
                              const std::optional<Interval>& attainable, const ModelFlags& flags);

}  // namespace polya

#endif  // POLYA_SA_HPP

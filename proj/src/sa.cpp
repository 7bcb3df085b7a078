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

#include "polya/sa.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace polya {
namespace {

template <class Enum, std::size_t N>
Enum lookup(const std::array<std::pair<Enum, std::string_view>, N>& table,
            std::string_view text, const char* what) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  throw std::invalid_argument(std::string("unknown ") + what + ": '" + std::string(text) + "'");
}

template <class Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                         Enum value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "unknown";
}

constexpr std::array<std::pair<EquilibriumClass, std::string_view>, 5> kClassNames{{
    {EquilibriumClass::Stable, "stable"},
    {EquilibriumClass::StrictlyUnstable, "strictly-unstable"},
    {EquilibriumClass::Touchpoint, "touchpoint"},
    {EquilibriumClass::FlatDrift, "flat-drift"},
    {EquilibriumClass::WeaklyUnstableBoundary, "weakly-unstable-boundary"},
}};

constexpr std::array<std::pair<LimitKind, std::string_view>, 4> kKindNames{{
    {LimitKind::PointMassSet, "point-mass-set"},
    {LimitKind::BetaDistribution, "beta-distribution"},
    {LimitKind::ContinuousNoAtoms, "continuous-no-atoms"},
    {LimitKind::Unknown, "unknown"},
}};

constexpr std::array<std::pair<Verdict, std::string_view>, 4> kVerdictNames{{
    {Verdict::ConvergesUnique, "converges-a.s.-unique"},
    {Verdict::PositiveProbability, "positive-probability"},
    {Verdict::PossibleTouchpoint, "possible-touchpoint"},
    {Verdict::Unknown, "unknown"},
}};

constexpr std::array<std::pair<Theorem, std::string_view>, 7> kTheoremNames{{
    {Theorem::Main, "theorem:main"},
    {Theorem::Pem, "theorem:pem"},
    {Theorem::Renlund, "theorem:renlund"},
    {Theorem::Stable, "theorem:stable"},
    {Theorem::Pem2, "theorem:pem2"},
    {Theorem::H1, "theorem:h1"},
    {Theorem::TwoDrag, "theorem:2drag"},
}};

// Exact position of a root relative to the interval; `strict` asks for the
// open interval.
bool root_inside(const RootRecord& root, const Interval& iv, bool strict) {
  const int above_lo = sign_at(linear(Rational(1), -iv.lo), root);
  const int below_hi = -sign_at(linear(Rational(1), -iv.hi), root);
  return strict ? (above_lo > 0 && below_hi > 0) : (above_lo >= 0 && below_hi >= 0);
}

}  // namespace

SAConditions make_sa_conditions(Rational c_l, Rational c_u, Rational K_u, Rational K_f,
                                Rational K_e) {
  for (const Rational* v : {&c_l, &c_u, &K_u, &K_f, &K_e}) {
    if (sgn(*v) <= 0) throw std::invalid_argument("stochastic approximation constants must be positive");
  }
  if (c_u < c_l) throw std::invalid_argument("c_l must not exceed c_u");
  Rational K_delta = c_u * (K_f + K_u);
  return SAConditions{std::move(c_l), std::move(c_u), std::move(K_u), std::move(K_f),
                      std::move(K_e), std::move(K_delta)};
}

std::string_view to_string(EquilibriumClass cls) { return name_of(kClassNames, cls); }
std::string_view to_string(LimitKind kind) { return name_of(kKindNames, kind); }
std::string_view to_string(Verdict verdict) { return name_of(kVerdictNames, verdict); }
std::string_view to_string(Theorem theorem) { return name_of(kTheoremNames, theorem); }

EquilibriumClass equilibrium_class_from_string(std::string_view text) {
  return lookup(kClassNames, text, "equilibrium class");
}
LimitKind limit_kind_from_string(std::string_view text) {
  return lookup(kKindNames, text, "limit kind");
}
Verdict verdict_from_string(std::string_view text) { return lookup(kVerdictNames, text, "verdict"); }
Theorem theorem_from_string(std::string_view text) { return lookup(kTheoremNames, text, "theorem"); }

Equilibrium classify(const RatPoly& drift, const RootRecord& root) {
  if (drift.is_zero()) throw std::invalid_argument("classify: drift is identically zero");
  if (sign_at(drift, root) != 0) throw std::invalid_argument("classify: point is not a root of the drift");

  Equilibrium eq;
  eq.root = root;
  const RatPoly slope = derivative(drift);
  if (root.is_rational()) eq.derivative_at_root = slope(*root.exact);
  eq.derivative_sign = sign_at(slope, root);

  const auto [left, right] = one_sided_signs(drift, root);
  switch (root.location) {
    case RootLocation::LeftBoundary:
      eq.cls = right < 0 ? EquilibriumClass::Stable : EquilibriumClass::StrictlyUnstable;
      break;
    case RootLocation::RightBoundary:
      eq.cls = left > 0 ? EquilibriumClass::Stable : EquilibriumClass::StrictlyUnstable;
      break;
    case RootLocation::Interior:
      if (left == right) {
        eq.cls = EquilibriumClass::Touchpoint;
      } else if (left > 0) {
        eq.cls = EquilibriumClass::Stable;
      } else {
        eq.cls = EquilibriumClass::StrictlyUnstable;
      }
      break;
  }
  return eq;
}

bool check_noise_floor(const RatPoly& error_fn, const RootRecord& point) {
  return sign_at(error_fn, point) > 0;
}

bool check_renlund(const RatPoly& drift, const RatPoly& error_fn, Boundary boundary,
                   bool count_diverges) {
  const RootRecord point = rational_point(boundary == Boundary::Zero ? Rational(0) : Rational(1));
  if (drift.is_zero() || sgn(drift(*point.exact)) != 0) {
    throw std::invalid_argument("check_renlund: boundary point is not a root of the drift");
  }
  if (classify(drift, point).cls != EquilibriumClass::StrictlyUnstable) {
    throw std::invalid_argument("check_renlund: boundary root is not strictly unstable");
  }
  // A polynomial vanishing at p is bounded by K|x - p| on [0, 1]; the drift
  // squared vanishes to second order.
  return sgn(error_fn(*point.exact)) == 0 && count_diverges;
}

LimitPrediction predict_limit(const RatPoly& drift, const RatPoly& error_fn,
                              const std::optional<Interval>& attainable, const ModelFlags& flags) {
  LimitPrediction out;
  if (drift.is_zero()) {
    switch (flags.flat_family) {
      case FlatFamily::ClassicalPolya:
        if (!flags.beta_params) throw std::invalid_argument("classical family requires Beta parameters");
        out.kind = LimitKind::BetaDistribution;
        out.beta_params = flags.beta_params;
        out.citations = {Theorem::H1};
        break;
      case FlatFamily::TwoDrawPolya:
        out.kind = LimitKind::ContinuousNoAtoms;
        out.citations = {Theorem::TwoDrag};
        break;
      case FlatFamily::None:
        out.kind = LimitKind::Unknown;
        break;
    }
    return out;
  }

  out.kind = LimitKind::PointMassSet;
  out.citations = {Theorem::Main};
  for (const RootRecord& root : roots_in_unit_interval(drift)) {
    const Equilibrium eq = classify(drift, root);
    PointVerdict kept{root, eq.cls, Verdict::Unknown, {}};
    const BoundaryNote note = root.location == RootLocation::LeftBoundary    ? flags.at_zero
                              : root.location == RootLocation::RightBoundary ? flags.at_one
                                                                             : BoundaryNote::None;
    if (note == BoundaryNote::NotALimitOfTimeChange) {
      out.excluded_points.push_back({root, eq.cls, Theorem::Main});
      continue;
    }
    if (note == BoundaryNote::Undetermined) {
      kept.cls = EquilibriumClass::WeaklyUnstableBoundary;
      out.certain_points.push_back(std::move(kept));
      continue;
    }
    switch (eq.cls) {
      case EquilibriumClass::StrictlyUnstable:
        if (root.location == RootLocation::Interior) {
          if (check_noise_floor(error_fn, root)) {
            out.excluded_points.push_back({root, eq.cls, Theorem::Pem});
            continue;
          }
        } else {
          const bool zero = root.location == RootLocation::LeftBoundary;
          if (check_renlund(drift, error_fn, zero ? Boundary::Zero : Boundary::One,
                            zero ? flags.white_diverges : flags.black_diverges)) {
            out.excluded_points.push_back({root, eq.cls, Theorem::Renlund});
            continue;
          }
        }
        break;
      case EquilibriumClass::Stable:
        if (attainable && root_inside(root, *attainable, false)) {
          kept.verdict = Verdict::PositiveProbability;
          kept.citations = {Theorem::Stable};
        }
        break;
      case EquilibriumClass::Touchpoint:
        if (attainable && root_inside(root, *attainable, true)) {
          kept.verdict = Verdict::PossibleTouchpoint;
          kept.citations = {Theorem::Pem2};
        }
        break;
      case EquilibriumClass::FlatDrift:
      case EquilibriumClass::WeaklyUnstableBoundary:
        break;
    }
    out.certain_points.push_back(std::move(kept));
  }

  if (out.certain_points.size() == 1) {
    auto& only = out.certain_points.front();
    only.verdict = Verdict::ConvergesUnique;
    only.citations.insert(only.citations.begin(), Theorem::Main);
  }
  return out;
}

}  // namespace polya

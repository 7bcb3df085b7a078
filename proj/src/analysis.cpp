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

#include "polya/analysis.hpp"

#include <stdexcept>

namespace polya {
namespace {

// Degenerate urns with a single reinforcing row (or the one-draw analogue)
// converge to that row's ratio; the other roots are excluded by the same
// result.
LimitPrediction degenerate_point_prediction(const RatPoly& drift_poly, const Rational& limit,
                                            Theorem theorem) {
  LimitPrediction out;
  out.kind = LimitKind::PointMassSet;
  out.citations = {theorem};
  bool found = false;
  for (const RootRecord& root : roots_in_unit_interval(drift_poly)) {
    const Equilibrium eq = classify(drift_poly, root);
    if (root.is_rational() && *root.exact == limit) {
      out.certain_points.push_back({root, eq.cls, Verdict::ConvergesUnique, {theorem}});
      found = true;
    } else {
      out.excluded_points.push_back({root, eq.cls, theorem});
    }
  }
  if (!found) throw std::logic_error("degenerate limit is not a root of the drift");
  return out;
}

void apply_boundary_note(std::vector<Equilibrium>& equilibria, RootLocation where,
                         BoundaryNote note) {
  if (note != BoundaryNote::Undetermined) return;
  for (auto& eq : equilibria) {
    if (eq.root.location == where) eq.cls = EquilibriumClass::WeaklyUnstableBoundary;
  }
}

}  // namespace

Analysis analyze(const UrnModel& model) {
  validate(model);
  Analysis a;
  a.model = model;
  a.meta = model_meta(model);
  a.conditions = sa_conditions(model);
  a.drift = drift(model);

  ModelFlags flags;
  flags.flat_family = a.meta.flat_family;
  flags.white_diverges = a.meta.white_diverges;
  flags.black_diverges = a.meta.black_diverges;

  std::optional<Theorem> degenerate_theorem;
  if (const auto* one = std::get_if<OneDrawModel>(&model)) {
    const auto& m = one->matrix;
    ErrorOne err = error_one(m);
    a.psi = err.psi;
    a.error_fn = err.error;
    if (flags.flat_family == FlatFamily::ClassicalPolya) {
      flags.beta_params = std::make_pair(Rational(one->w0 / m.a), Rational(one->b0 / m.a));
    }
    if (a.meta.degenerate_case != 0) {
      a.degenerate_limit = drift_one_degenerate(m);
      degenerate_theorem = Theorem::H1;
    }
  } else {
    const auto& m = std::get<TwoDrawModel>(model).matrix;
    ErrorTwo err = error_two(m);
    a.psi = err.psi;
    a.error_fn = err.error;
    a.two_draw_error = std::move(err);
    if (a.meta.degenerate_case != 0) {
      a.reduction = degenerate_reduce(m);
      if (a.reduction->limit) {
        a.degenerate_limit = a.reduction->limit;
        degenerate_theorem = Theorem::TwoDrag;
      } else {
        a.error_fn = *a.reduction->error_pullback;
        // Cases 4 and 5 change time by skipping the inert pair; the skipped
        // color's boundary needs the time-changed drift's own expansion.
        if (a.reduction->case_id == 4) {
          if (sgn(m.d) > 0) {
            flags.at_one = BoundaryNote::NotALimitOfTimeChange;
          } else if (2 * m.c == m.f) {
            flags.at_one = BoundaryNote::Undetermined;
          }
        } else if (a.reduction->case_id == 5) {
          if (sgn(m.c) > 0) {
            flags.at_zero = BoundaryNote::NotALimitOfTimeChange;
          } else if (2 * m.d == m.a) {
            flags.at_zero = BoundaryNote::Undetermined;
          }
        }
      }
    }
  }

  if (!a.drift.is_zero()) {
    for (const RootRecord& root : roots_in_unit_interval(a.drift)) {
      a.equilibria.push_back(classify(a.drift, root));
    }
    apply_boundary_note(a.equilibria, RootLocation::LeftBoundary, flags.at_zero);
    apply_boundary_note(a.equilibria, RootLocation::RightBoundary, flags.at_one);
  }

  if (degenerate_theorem && !a.drift.is_zero()) {
    a.prediction = degenerate_point_prediction(a.drift, *a.degenerate_limit, *degenerate_theorem);
  } else {
    a.prediction = predict_limit(a.drift, a.error_fn, a.meta.attainable, flags);
  }
  return a;
}

PredictedLocations predicted_locations(const LimitPrediction& prediction) {
  PredictedLocations out;
  for (const auto& p : prediction.certain_points) out.allowed.push_back(p.point.approx);
  for (const auto& p : prediction.excluded_points) out.excluded.push_back(p.point.approx);
  return out;
}

}  // namespace polya

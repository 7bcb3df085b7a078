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

#ifndef POLYA_ANALYSIS_HPP
#define POLYA_ANALYSIS_HPP

#include <optional>
#include <vector>

#include "polya/sa.hpp"
#include "polya/urns.hpp"

namespace polya {

/// Everything derived exactly from a model: drift, error, equilibria and the
/// predicted support of the limiting fraction.
struct Analysis {
  UrnModel model;
  RatPoly drift;
  RatPoly psi;
  /// Leading error polynomial used for the theorem checks. For degenerate
  /// two-draw cases 4-6 this is the time-changed error pulled back to x.
  RatPoly error_fn;
  std::optional<ErrorTwo> two_draw_error;
  ModelMeta meta;
  std::optional<SAConditions> conditions;
  std::optional<DegenerateReduction> reduction;
  std::optional<Rational> degenerate_limit;
  std::vector<Equilibrium> equilibria;
  LimitPrediction prediction;
};

Analysis analyze(const UrnModel& model);

/// Predicted limit points a simulation should concentrate on, and points it
/// should avoid, as floating-point locations.
struct PredictedLocations {
  std::vector<double> allowed;
  std::vector<double> excluded;
};

PredictedLocations predicted_locations(const LimitPrediction& prediction);

}  // namespace polya

#endif  // POLYA_ANALYSIS_HPP

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


#include <gtest/gtest.h>

#include <random>

#include "polya/analysis.hpp"
#include "polya/selftest.hpp"
#include "support.hpp"

namespace polya {
namespace {

using testing::P;
using testing::Q;

const RatPoly kBistable = P({3, -22, 48, -32});
const RatPoly kTouch = P({3, -28, 80, -64});

EquilibriumClass class_at(const RatPoly& drift, const Rational& x, int multiplicity = 1) {
  return classify(drift, rational_point(x, multiplicity)).cls;
}

TEST(SAConditions, ValidatesAndFillsKDelta) {
  const SAConditions c = make_sa_conditions(Q("1/5"), Q("1/2"), Q("3"), Q("2"), Q("7"));
  EXPECT_EQ(c.K_delta, Q("5/2"));
  EXPECT_THROW(make_sa_conditions(Q("1"), Q("1/2"), 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(make_sa_conditions(Q("0"), Q("1/2"), 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(make_sa_conditions(Q("1/4"), Q("1/2"), 1, 1, -1), std::invalid_argument);
}

TEST(Classify, WorkedExamples) {
  EXPECT_EQ(class_at(kBistable, Q("1/2")), EquilibriumClass::StrictlyUnstable);
  EXPECT_EQ(class_at(kBistable, Q("1/4")), EquilibriumClass::Stable);
  EXPECT_EQ(class_at(kBistable, Q("3/4")), EquilibriumClass::Stable);
  EXPECT_EQ(class_at(kTouch, Q("1/4"), 2), EquilibriumClass::Touchpoint);
  EXPECT_EQ(class_at(kTouch, Q("3/4")), EquilibriumClass::Stable);
  EXPECT_EQ(class_at(P({1, -2}), Q("1/2")), EquilibriumClass::Stable);
  const Equilibrium eq = classify(kBistable, rational_point(Q("1/2")));
  EXPECT_EQ(*eq.derivative_at_root, 2);
  EXPECT_EQ(eq.derivative_sign, 1);
}

TEST(Classify, OddHigherMultiplicityUsesOneSidedSigns) {
  EXPECT_EQ(class_at(P({1, -6, 12, -8}), Q("1/2"), 3), EquilibriumClass::Stable);
  EXPECT_EQ(class_at(P({-1, 6, -12, 8}), Q("1/2"), 3), EquilibriumClass::StrictlyUnstable);
}

TEST(Classify, Boundaries) {
  // x(1 - x): pushes away from 0, toward 1.
  EXPECT_EQ(class_at(P({0, 1, -1}), Q("0")), EquilibriumClass::StrictlyUnstable);
  EXPECT_EQ(class_at(P({0, 1, -1}), Q("1")), EquilibriumClass::Stable);
  EXPECT_EQ(class_at(P({0, -1, 1}), Q("0")), EquilibriumClass::Stable);
  EXPECT_EQ(class_at(P({0, -1, 1}), Q("1")), EquilibriumClass::StrictlyUnstable);
  // Boundary double roots are never touchpoints.
  EXPECT_EQ(class_at(P({0, 0, 1}), Q("0"), 2), EquilibriumClass::StrictlyUnstable);
}

TEST(Classify, RejectsNonRootsAndZeroDrift) {
  EXPECT_THROW(classify(kBistable, rational_point(Q("1/3"))), std::invalid_argument);
  EXPECT_THROW(classify(RatPoly(), rational_point(Q("1/3"))), std::invalid_argument);
}

TEST(ClassifyProperty, InvariantUnderPositiveScaling) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const RatPoly g = drift_two(random_matrix_two(rng));
    if (g.is_zero()) continue;
    const Rational scale = random_positive_rational(rng);
    for (const auto& root : roots_in_unit_interval(g)) {
      EXPECT_EQ(classify(g, root).cls, classify(g * scale, root).cls);
    }
  }
}

TEST(NoiseFloor, Examples) {
  // One-draw (2,1,0,0): psi = 2 - 3x vanishes at 2/3.
  EXPECT_FALSE(check_noise_floor(error_one({2, 1, 0, 0}).error, rational_point(Q("2/3"))));
  // One-draw (2,0,0,1): psi = 2 - x, positive on (0, 1).
  EXPECT_EQ(error_one({2, 0, 0, 1}).psi, P({2, -1}));
  EXPECT_TRUE(check_noise_floor(error_one({2, 0, 0, 1}).error, rational_point(Q("2/3"))));
  EXPECT_FALSE(check_noise_floor(error_one({1, 1, 1, 1}).error, rational_point(Q("1/2"))));
  EXPECT_TRUE(check_noise_floor(error_two({15, 3, 4, 1, 3, 21}).error, rational_point(Q("1/2"))));
}

TEST(Renlund, Examples) {
  // One-draw with c = 0 and a > d: 0 is strictly unstable, white reinforced.
  const ReplacementMatrixOne one{3, 1, 0, 1};
  EXPECT_TRUE(check_renlund(drift_one(one), error_one(one).error, Boundary::Zero, true));
  EXPECT_FALSE(check_renlund(drift_one(one), error_one(one).error, Boundary::Zero, false));
  // Two-draw with e = 0 and 2c > f.
  const ReplacementMatrixTwo two{2, 1, 3, 1, 0, 2};
  EXPECT_TRUE(check_renlund(drift_two(two), error_two(two).error, Boundary::Zero, model_meta(TwoDrawModel{two}).white_diverges));
  // f(0) = c > 0: not a root.
  const ReplacementMatrixOne off{1, 1, 1, 1};
  EXPECT_THROW(check_renlund(drift_one(off), error_one(off).error, Boundary::Zero, true), std::invalid_argument);
  // Stable boundary root is rejected too.
  EXPECT_THROW(check_renlund(P({0, -1}), P({0, 1, -1}), Boundary::Zero, true), std::invalid_argument);
}

TEST(PredictLimit, Friedman) {
  const Analysis a = analyze(OneDrawModel{{1, 1, 1, 1}});
  EXPECT_EQ(a.prediction.kind, LimitKind::PointMassSet);
  ASSERT_EQ(a.prediction.certain_points.size(), 1u);
  EXPECT_EQ(*a.prediction.certain_points[0].point.exact, Q("1/2"));
  EXPECT_EQ(a.prediction.certain_points[0].verdict, Verdict::ConvergesUnique);
  EXPECT_TRUE(a.prediction.excluded_points.empty());
}

TEST(PredictLimit, Bistable) {
  const Analysis a = analyze(TwoDrawModel{{15, 3, 4, 1, 3, 21}});
  const auto& p = a.prediction;
  EXPECT_EQ(p.kind, LimitKind::PointMassSet);
  ASSERT_EQ(p.certain_points.size(), 2u);
  EXPECT_EQ(*p.certain_points[0].point.exact, Q("1/4"));
  EXPECT_EQ(*p.certain_points[1].point.exact, Q("3/4"));
  for (const auto& c : p.certain_points) {
    EXPECT_EQ(c.verdict, Verdict::PositiveProbability);
    EXPECT_EQ(c.citations, std::vector<Theorem>{Theorem::Stable});
  }
  ASSERT_EQ(p.excluded_points.size(), 1u);
  EXPECT_EQ(*p.excluded_points[0].point.exact, Q("1/2"));
  EXPECT_EQ(p.excluded_points[0].reason, Theorem::Pem);
  EXPECT_EQ(a.meta.attainable->lo, Q("1/8"));
  EXPECT_EQ(a.meta.attainable->hi, Q("5/6"));
}

TEST(PredictLimit, Touchpoint) {
  const auto& p = analyze(TwoDrawModel{{35, 9, 1, 1, 3, 21}}).prediction;
  ASSERT_EQ(p.certain_points.size(), 2u);
  EXPECT_EQ(p.certain_points[0].cls, EquilibriumClass::Touchpoint);
  EXPECT_EQ(p.certain_points[0].verdict, Verdict::PossibleTouchpoint);
  EXPECT_EQ(p.certain_points[0].citations, std::vector<Theorem>{Theorem::Pem2});
  EXPECT_EQ(p.certain_points[1].verdict, Verdict::PositiveProbability);
  EXPECT_TRUE(p.excluded_points.empty());
}

TEST(PredictLimit, FlatFamilies) {
  const auto beta = analyze(OneDrawModel{{1, 0, 0, 1}, 1, 1}).prediction;
  EXPECT_EQ(beta.kind, LimitKind::BetaDistribution);
  EXPECT_EQ(*beta.beta_params, std::make_pair(Rational(1), Rational(1)));
  EXPECT_EQ(beta.citations, std::vector<Theorem>{Theorem::H1});
  const auto beta2 = analyze(OneDrawModel{{3, 0, 0, 3}, 2, 1}).prediction;
  EXPECT_EQ(*beta2.beta_params, std::make_pair(Q("2/3"), Q("1/3")));
  const auto cont = analyze(TwoDrawModel{{2, 0, 1, 1, 0, 2}}).prediction;
  EXPECT_EQ(cont.kind, LimitKind::ContinuousNoAtoms);
  EXPECT_EQ(cont.citations, std::vector<Theorem>{Theorem::TwoDrag});
  // Flat but outside both families: deterministic one-draw scheme is not flat,
  // so use the zero drift directly.
  EXPECT_EQ(predict_limit(RatPoly(), RatPoly(), std::nullopt, {}).kind, LimitKind::Unknown);
}

TEST(PredictLimit, RenlundExcludesBoundary) {
  const auto p = analyze(OneDrawModel{{3, 1, 0, 1}}).prediction;
  bool excluded_zero = false;
  for (const auto& e : p.excluded_points) {
    if (e.point.exact && *e.point.exact == 0) excluded_zero = e.reason == Theorem::Renlund;
  }
  EXPECT_TRUE(excluded_zero);
}

TEST(PredictLimit, StableOutsideAttainableIsUnknown) {
  ModelFlags flags;
  const auto p = predict_limit(P({1, -2}), P({0, 1, -1}), Interval{Q("0.6"), Q("0.9")}, flags);
  ASSERT_EQ(p.certain_points.size(), 1u);
  // The unique survivor is still the almost-sure limit by the main theorem.
  EXPECT_EQ(p.certain_points[0].verdict, Verdict::ConvergesUnique);
  EXPECT_EQ(p.certain_points[0].citations, std::vector<Theorem>{Theorem::Main});
  const auto two = predict_limit(kBistable, error_two({15, 3, 4, 1, 3, 21}).error, Interval{Q("0.6"), Q("0.9")}, flags);
  EXPECT_EQ(two.certain_points[0].verdict, Verdict::Unknown);
  EXPECT_EQ(two.certain_points[1].verdict, Verdict::PositiveProbability);
}

TEST(Enums, StringsRoundTrip) {
  for (auto t : {Theorem::Main, Theorem::Pem, Theorem::Renlund, Theorem::Stable, Theorem::Pem2, Theorem::H1, Theorem::TwoDrag}) {
    EXPECT_EQ(theorem_from_string(to_string(t)), t);
  }
  EXPECT_EQ(to_string(Theorem::TwoDrag), "theorem:2drag");
  EXPECT_EQ(to_string(Verdict::ConvergesUnique), "converges-a.s.-unique");
  EXPECT_EQ(to_string(EquilibriumClass::WeaklyUnstableBoundary), "weakly-unstable-boundary");
  EXPECT_THROW(theorem_from_string("theorem:none"), std::invalid_argument);
}

// Every root appears exactly once, boundary signs hold, and a non-flat drift
// always leaves a survivor.
TEST(PredictLimitProperty, RandomMatrices) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const bool two = i % 2 == 0;
    const UrnModel model = two ? UrnModel(TwoDrawModel{random_matrix_two(rng)})
                               : UrnModel(OneDrawModel{random_matrix_one(rng)});
    const Analysis a = analyze(model);
    EXPECT_GE(sgn(a.drift(Rational(0))), 0);
    EXPECT_LE(sgn(a.drift(Rational(1))), 0);
    if (a.drift.is_zero()) continue;
    const auto& p = a.prediction;
    EXPECT_EQ(p.certain_points.size() + p.excluded_points.size(), roots_in_unit_interval(a.drift).size());
    EXPECT_FALSE(p.certain_points.empty());
    bool stable_side = false;
    for (const auto& eq : a.equilibria) stable_side = stable_side || eq.derivative_sign <= 0;
    EXPECT_TRUE(stable_side);
    EXPECT_GT(sgn(a.meta.K_e), 0);
  }
}

TEST(PredictLimitProperty, ClassicalFamilyAlwaysBeta) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const Rational a = random_positive_rational(rng);
    const auto p = analyze(OneDrawModel{{a, 0, 0, a}, random_positive_rational(rng), random_positive_rational(rng)}).prediction;
    EXPECT_EQ(p.kind, LimitKind::BetaDistribution);
    EXPECT_TRUE(p.excluded_points.empty());
  }
}

}  // namespace
}  // namespace polya

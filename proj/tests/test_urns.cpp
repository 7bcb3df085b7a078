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

UrnState S(const char* w, const char* b) { return {Q(w), Q(b), 0}; }

Rational probability_sum(const StepDistribution& d) {
  Rational s = 0;
  for (const auto& o : d) s += o.probability;
  return s;
}

TEST(Matrix, Validation) {
  EXPECT_THROW((ReplacementMatrixOne{0, 0, 0, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((ReplacementMatrixOne{1, -1, 0, 0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((ReplacementMatrixTwo{0, 0, 0, 0, 0, 1}.validate()));
  EXPECT_THROW(validate(TwoDrawModel{{1, 1, 1, 1, 1, 1}, 1, 3}), std::invalid_argument);
  EXPECT_NO_THROW(validate(TwoDrawModel{{1, 1, 1, 1, 1, 1}, 1, 3, Sampling::WithReplacement}));
  EXPECT_THROW(validate(OneDrawModel{{1, 0, 0, 1}, 0, 0}), std::invalid_argument);
}

TEST(StepDistribution, Examples) {
  const auto d = step_distribution(S("2", "2"), TwoDrawModel{{1, 1, 1, 1, 1, 1}});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].probability, Q("1/6"));
  EXPECT_EQ(d[1].probability, Q("2/3"));
  EXPECT_EQ(d[2].probability, Q("1/6"));
  const auto one = step_distribution(S("3", "0"), OneDrawModel{{1, 0, 0, 1}});
  EXPECT_EQ(one[0].probability, 1);
  EXPECT_EQ(one[1].probability, 0);
  const auto with = step_distribution(S("1", "1"), TwoDrawModel{{1, 1, 1, 1, 1, 1}, 1, 1, Sampling::WithReplacement});
  EXPECT_EQ(with[0].probability, Q("1/4"));
  EXPECT_EQ(with[1].probability, Q("1/2"));
  EXPECT_EQ(with[2].probability, Q("1/4"));
  const auto wb = step_distribution(S("2", "2"), TwoDrawModel{{15, 3, 4, 1, 3, 21}});
  EXPECT_EQ(wb[1].label, Outcome::WhiteBlack);
  EXPECT_EQ(wb[1].d_white, 4);
  EXPECT_EQ(wb[1].d_total, 5);
}

TEST(StepDistribution, Errors) {
  EXPECT_THROW(step_distribution(S("1", "0"), TwoDrawModel{{1, 1, 1, 1, 1, 1}}), std::invalid_argument);
  EXPECT_THROW(step_distribution(S("-1", "3"), OneDrawModel{{1, 1, 1, 1}}), std::invalid_argument);
  EXPECT_THROW(step_distribution(S("0", "0"), OneDrawModel{{1, 1, 1, 1}}), std::invalid_argument);
}

TEST(StepDistributionProperty, SumsToOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const UrnState s{1 + random_rational(rng, 30, 3), 1 + random_rational(rng, 30, 3), 0};
    UrnModel model;
    switch (i % 3) {
      case 0: model = OneDrawModel{random_matrix_one(rng)}; break;
      case 1: model = TwoDrawModel{random_matrix_two(rng), 2, 2, Sampling::WithReplacement}; break;
      default: model = TwoDrawModel{random_matrix_two(rng)}; break;
    }
    const auto d = step_distribution(s, model);
    EXPECT_EQ(probability_sum(d), 1);
    for (const auto& o : d) EXPECT_GE(sgn(o.probability), 0);
  }
}

TEST(DriftOne, Examples) {
  EXPECT_EQ(drift_one({1, 1, 1, 1}), P({1, -2}));
  EXPECT_TRUE(drift_one({1, 0, 0, 1}).is_zero());
  EXPECT_EQ(drift_one({2, 1, 2, 1}), P({2, -3}));
}

TEST(ErrorOne, Examples) {
  EXPECT_TRUE(error_one({1, 1, 1, 1}).psi.is_zero());
  EXPECT_TRUE(error_one({1, 1, 1, 1}).error.is_zero());
  EXPECT_EQ(error_one({1, 0, 0, 1}).psi, P({1}));
  EXPECT_EQ(error_one({1, 0, 0, 1}).error, P({0, 1, -1}));
  EXPECT_EQ(error_one({2, 0, 0, 1}).psi, P({2, -1}));
}

TEST(DriftTwo, WorkedFixtures) {
  EXPECT_EQ(drift_two({3, 2, 2, 3, 1, 4}), P({1, -3}));
  EXPECT_EQ(drift_two({9, 1, 2, 3, 1, 7}), P({1, -6, 12, -8}));
  EXPECT_EQ(drift_two({15, 3, 4, 1, 3, 21}), P({3, -22, 48, -32}));
  EXPECT_EQ(drift_two({35, 9, 1, 1, 3, 21}), P({3, -28, 80, -64}));
}

TEST(ErrorTwo, Examples) {
  const ErrorTwo flat = error_two({2, 3, 2, 3, 2, 3});
  EXPECT_TRUE(flat.A.is_zero() && flat.B.is_zero() && flat.C.is_zero() && flat.psi.is_zero());
  const ErrorTwo b_zero = error_two({1, 0, 0, 1, 1, 0});
  EXPECT_TRUE(b_zero.B.is_zero());
  EXPECT_EQ(b_zero.C, P({-1}));
  EXPECT_EQ(b_zero.psi, P({2, -4, 4}));
  // Hand-evaluated at x = 1/2.
  const ErrorTwo e = error_two({15, 3, 4, 1, 3, 21});
  const Rational half = Q("1/2");
  EXPECT_EQ(e.A(half), -6);
  EXPECT_EQ(e.B(half), 15);
  EXPECT_EQ(e.C(half), Q("21/2"));
  EXPECT_EQ(e.psi(half), Q("243/2"));
  EXPECT_EQ(e.error(half), Q("243/8"));
  EXPECT_EQ(e.psi, psi_explicit_quartic({15, 3, 4, 1, 3, 21}));
}

TEST(Oracle, OneDrawMeanZeroNoiseAndDrift) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const ReplacementMatrixOne m = random_matrix_one(rng);
    const UrnState s{random_positive_rational(rng, 20, 3), random_positive_rational(rng, 20, 3), 0};
    const auto mom = cond_moments_oracle(s, OneDrawModel{m});
    EXPECT_EQ(mom.mean_u, 0);
    EXPECT_EQ(mom.mean_y, drift_one(m)(s.fraction()));
    EXPECT_EQ(mom.mean_u2, error_one(m).error(s.fraction()));
    EXPECT_EQ(cond_iv_closed_form_one(s, m), mom.mean_u_over_t);
  }
}

TEST(Oracle, ConditionIvExamples) {
  EXPECT_EQ(cond_iv_closed_form_one(S("3", "5"), {1, 1, 1, 1}), 0);
  EXPECT_EQ(cond_iv_closed_form_one(S("1", "1"), {1, 0, 0, 1}), 0);
  const UrnState s = S("1", "1");
  EXPECT_EQ(cond_iv_closed_form_one(s, {2, 0, 0, 1}),
            cond_moments_oracle(s, OneDrawModel{{2, 0, 0, 1}}).mean_u_over_t);
  EXPECT_NE(cond_iv_closed_form_one(s, {2, 0, 0, 1}), 0);
}

TEST(Oracle, TwoDrawRemainders) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const ReplacementMatrixTwo m = random_matrix_two(rng);
    const UrnState s{1 + random_rational(rng, 20, 3), 1 + random_rational(rng, 20, 3), 0};
    const Rational z = s.fraction();
    const auto without = cond_moments_oracle(s, TwoDrawModel{m});
    EXPECT_EQ(without.mean_u, two_draw_remainder(s, m));
    EXPECT_EQ(without.mean_y - drift_two(m)(z), two_draw_remainder(s, m));
    const auto with = cond_moments_oracle(s, TwoDrawModel{m, 2, 2, Sampling::WithReplacement});
    EXPECT_EQ(with.mean_u, 0);
    EXPECT_EQ(with.mean_u2, z * (1 - z) * error_two(m).psi(z));
  }
}

TEST(Oracle, WithoutReplacementSecondMomentGapIsOrderOneOverT) {
  const ReplacementMatrixTwo m{15, 3, 4, 1, 3, 21};
  const Rational half = Q("1/2");
  const Rational target = half * half * error_two(m).psi(half);
  std::vector<double> scaled;
  for (long t : {10L, 100L, 1000L, 10000L}) {
    const UrnState s{Rational(t, 2), Rational(t, 2), 0};
    const Rational gap = cond_moments_oracle(s, TwoDrawModel{m}).mean_u2 - target;
    scaled.push_back(Rational(abs(Rational(gap * (t - 1)))).get_d());
  }
  EXPECT_LT(std::fabs(scaled[3] - scaled[2]) / scaled[3], 0.01);
}

TEST(Oracle, ConditionIvDecaysLikeOneOverTSquared) {
  const ReplacementMatrixTwo m{15, 3, 4, 1, 3, 21};
  const Rational K_e = model_meta(TwoDrawModel{m}).K_e;
  for (long t = 10; t <= 100000; t *= 10) {
    const UrnState s{Rational(t / 5), Rational(t - t / 5), 0};
    const Rational v = cond_moments_oracle(s, TwoDrawModel{m}).mean_u_over_t;
    EXPECT_LE(Rational(abs(Rational(v * t * t))), K_e) << t;
  }
  const ReplacementMatrixOne one{2, 0, 0, 1};
  const Rational K1 = model_meta(OneDrawModel{one}).K_e;
  for (long t = 10; t <= 100000; t *= 10) {
    const UrnState s{Rational(t / 3), Rational(t - t / 3), 0};
    EXPECT_LE(Rational(abs(Rational(cond_iv_closed_form_one(s, one) * t * t))), K1) << t;
  }
}

TEST(Table1, Fixtures) {
  const Table1 t = table1_polys({15, 3, 4, 1, 3, 21});
  EXPECT_EQ(t[0][5], 32);
  EXPECT_EQ(t[1][5], -64);
  EXPECT_EQ(t[2][5], 32);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(t[j][0], 0);
  EXPECT_THROW(
      {
        Table1 bad = mutated_table1({15, 3, 4, 1, 3, 21});
        (void)bad;
        SelftestOptions o;
        o.matrices = 5;
        o.oracle_pairs = 5;
        o.table1 = mutated_table1;
        for (const auto& s : run_selftest(o)) {
          if (s.name == "table1" && !s.passed()) throw std::runtime_error("caught");
        }
      },
      std::runtime_error);
}

TEST(Attainable, Examples) {
  EXPECT_EQ(attainable_interval({15, 3, 4, 1, 3, 21}), (Interval{Q("1/8"), Q("5/6")}));
  EXPECT_EQ(attainable_interval({35, 9, 1, 1, 3, 21}), (Interval{Q("1/8"), Q("35/44")}));
  EXPECT_EQ(attainable_interval({1, 1, 1, 1, 1, 1}), (Interval{Q("1/2"), Q("1/2")}));
  EXPECT_THROW(attainable_interval({0, 0, 1, 1, 1, 1}), std::invalid_argument);
}

TEST(Degenerate, CaseNumbering) {
  EXPECT_EQ(degenerate_case({2, 3, 0, 0, 0, 0}), 1);
  EXPECT_EQ(degenerate_case({0, 0, 0, 0, 1, 2}), 2);
  EXPECT_EQ(degenerate_case({0, 0, 1, 2, 0, 0}), 3);
  EXPECT_EQ(degenerate_case({0, 0, 1, 1, 1, 1}), 4);
  EXPECT_EQ(degenerate_case({1, 1, 1, 1, 0, 0}), 5);
  EXPECT_EQ(degenerate_case({1, 1, 0, 0, 1, 1}), 6);
  EXPECT_EQ(degenerate_case({1, 1, 1, 1, 1, 1}), 0);
  EXPECT_THROW(degenerate_case({0, 0, 0, 0, 0, 0}), std::invalid_argument);
}

TEST(Degenerate, Reductions) {
  EXPECT_EQ(*degenerate_reduce({2, 3, 0, 0, 0, 0}).limit, Q("2/5"));
  EXPECT_EQ(*degenerate_reduce({0, 0, 1, 3, 0, 0}).limit, Q("1/4"));
  const auto four = degenerate_reduce({0, 0, 1, 1, 1, 1});
  EXPECT_EQ(four.case_id, 4);
  EXPECT_EQ(*four.g_hat, P({2, -3}));
  EXPECT_EQ(case4_to_hat(Q("1/3")), Q("1/2"));
  EXPECT_EQ(case4_from_hat(Q("1/2")), Q("1/3"));
  const auto six = degenerate_reduce({1, 1, 0, 0, 1, 1});
  EXPECT_EQ(six.case_id, 6);
  const RatPoly g = drift_two({1, 1, 0, 0, 1, 1});
  for (const char* x : {"0", "1/3", "1/2", "7/9", "1"}) {
    const Rational p = Q(x);
    EXPECT_EQ((p * p + (1 - p) * (1 - p)) * g_hat_case6({1, 1, 0, 0, 1, 1}, p), g(p));
  }
  EXPECT_THROW(degenerate_reduce({1, 1, 1, 1, 1, 1}), std::invalid_argument);
  // Case 5 is case 4 with colors swapped.
  const auto five = degenerate_reduce({1, 1, 1, 1, 0, 0});
  EXPECT_EQ(five.case_id, 5);
}

TEST(Degenerate, Case4Transform) {
  const auto [t_hat, z_hat] = case4_transform(S("3", "4"));
  EXPECT_EQ(t_hat, 9);
  EXPECT_EQ(z_hat, Q("2/3"));
}

TEST(Degenerate, OneDrawLimits) {
  EXPECT_EQ(drift_one_degenerate({3, 1, 0, 0}), Q("3/4"));
  EXPECT_EQ(drift_one_degenerate({0, 0, 2, 2}), Q("1/2"));
  EXPECT_EQ(drift_one_degenerate({1, 0, 0, 0}), 1);
  EXPECT_THROW(drift_one_degenerate({1, 1, 1, 1}), std::invalid_argument);
  const Analysis a = analyze(OneDrawModel{{3, 1, 0, 0}});
  ASSERT_EQ(a.prediction.certain_points.size(), 1u);
  EXPECT_EQ(*a.prediction.certain_points[0].point.exact, Q("3/4"));
  EXPECT_EQ(a.prediction.certain_points[0].verdict, Verdict::ConvergesUnique);
}

TEST(Degenerate, TwoDrawAnalyses) {
  const Analysis one = analyze(TwoDrawModel{{2, 3, 0, 0, 0, 0}});
  ASSERT_EQ(one.prediction.certain_points.size(), 1u);
  EXPECT_EQ(*one.prediction.certain_points[0].point.exact, Q("2/5"));
  EXPECT_EQ(one.prediction.citations, std::vector<Theorem>{Theorem::TwoDrag});
  // Case 4 with d > 0: the boundary 1 is not a limit of the time-changed chain.
  const Analysis four = analyze(TwoDrawModel{{0, 0, 1, 2, 3, 4}});
  ASSERT_EQ(four.prediction.excluded_points.size(), 1u);
  EXPECT_EQ(*four.prediction.excluded_points[0].point.exact, 1);
  EXPECT_EQ(four.prediction.certain_points[0].verdict, Verdict::ConvergesUnique);
  // Case 4 with d = 0 and 2c = f: the drift is e (1 - x)^3, the boundary class
  // is undetermined, and the lone root is still the limit.
  const Analysis flat_edge = analyze(TwoDrawModel{{0, 0, 1, 0, 1, 2}});
  EXPECT_EQ(flat_edge.drift, P({1, -3, 3, -1}));
  ASSERT_EQ(flat_edge.prediction.certain_points.size(), 1u);
  EXPECT_EQ(flat_edge.prediction.certain_points[0].cls, EquilibriumClass::WeaklyUnstableBoundary);
  EXPECT_EQ(flat_edge.prediction.certain_points[0].verdict, Verdict::ConvergesUnique);
  EXPECT_EQ(flat_edge.equilibria[0].cls, EquilibriumClass::WeaklyUnstableBoundary);
}

TEST(Meta, ConstantsAndFlags) {
  const ModelMeta m = model_meta(TwoDrawModel{{15, 3, 4, 1, 3, 21}});
  EXPECT_EQ(m.t_min, 5);
  EXPECT_EQ(m.t_max, 24);
  EXPECT_GT(sgn(m.K_e), 0);
  EXPECT_EQ(m.kind, ModelKind::TwoDrawWithoutReplacement);
  const auto c = *sa_conditions(TwoDrawModel{{15, 3, 4, 1, 3, 21}});
  EXPECT_EQ(c.c_l, Q("1/28"));
  EXPECT_EQ(c.c_u, Q("1/5"));
  EXPECT_EQ(c.K_delta, c.c_u * (c.K_f + c.K_u));
  EXPECT_FALSE(sa_conditions(TwoDrawModel{{0, 0, 1, 1, 1, 1}}).has_value());
  const ModelMeta one = model_meta(OneDrawModel{{1, 0, 0, 1}});
  EXPECT_EQ(one.flat_family, FlatFamily::ClassicalPolya);
  EXPECT_EQ(model_meta(TwoDrawModel{{2, 0, 1, 1, 0, 2}}).flat_family, FlatFamily::TwoDrawPolya);
  EXPECT_TRUE(model_meta(TwoDrawModel{{2, 1, 3, 1, 0, 2}}).white_diverges);
}

TEST(Selftest, AllSuitesPass) {
  for (const auto& s : run_selftest()) EXPECT_TRUE(s.passed()) << s.name << ": " << s.first_failure;
}

TEST(Selftest, SeedOnlyChangesTheMatrices) {
  SelftestOptions a, b;
  b.seed = 12345;
  const auto ra = run_selftest(a), rb = run_selftest(b);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i].name, rb[i].name);
    EXPECT_EQ(ra[i].cases, rb[i].cases);
    EXPECT_TRUE(rb[i].passed());
  }
}

}  // namespace
}  // namespace polya

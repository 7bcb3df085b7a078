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
#include <sstream>

#include "polya/io.hpp"
#include "polya/selftest.hpp"
#include "support.hpp"

namespace polya {
namespace {

using testing::Q;

void expect_same_root(const RootRecord& a, const RootRecord& b) {
  EXPECT_EQ(a.exact, b.exact);
  EXPECT_EQ(a.bracket.lo, b.bracket.lo);
  EXPECT_EQ(a.bracket.hi, b.bracket.hi);
  EXPECT_EQ(a.approx, b.approx);
  EXPECT_EQ(a.multiplicity, b.multiplicity);
  EXPECT_EQ(a.location, b.location);
  EXPECT_EQ(a.defining, b.defining);
}

TEST(RationalJson, RoundTrip) {
  EXPECT_EQ(rational_to_json(Q("3/4")), "3/4");
  EXPECT_EQ(rational_to_json(Q("5")), "5/1");
  EXPECT_EQ(rational_from_json(Json(7)), 7);
  EXPECT_EQ(rational_from_json(Json("-6/8")), Q("-3/4"));
  EXPECT_THROW(rational_from_json(Json(0.5)), std::invalid_argument);
  EXPECT_THROW(rational_from_json(Json("1/0")), std::invalid_argument);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Rational r = random_rational(rng, 1000, 97);
    EXPECT_EQ(rational_from_json(rational_to_json(r)), r);
  }
}

TEST(RationalList, Parses) {
  EXPECT_EQ(parse_rational_list("15,3,4,1,3,21").size(), 6u);
  const auto v = parse_rational_list("1/2, 2 ,0.25");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], Q("1/2"));
  EXPECT_EQ(v[2], Q("1/4"));
  EXPECT_THROW(parse_rational_list("1,,2"), std::invalid_argument);
  EXPECT_THROW(parse_rational_list("1,x"), std::invalid_argument);
}

TEST(ModelJson, RoundTrip) {
  const std::vector<UrnModel> models{
      OneDrawModel{{1, 0, 0, 1}, Q("1/2"), 3},
      TwoDrawModel{{15, 3, 4, 1, 3, 21}},
      TwoDrawModel{{Q("3/2"), 1, 0, 2, 0, 3}, 4, 4, Sampling::WithReplacement},
  };
  for (const auto& m : models) {
    const UrnModel back = model_from_json(model_to_json(m));
    EXPECT_EQ(model_to_json(back).dump(), model_to_json(m).dump());
  }
}

TEST(ModelJson, Errors) {
  EXPECT_THROW(model_from_json(Json::parse(R"({"model":"three-draw","matrix":[[1,0],[0,1]]})")),
               std::invalid_argument);
  EXPECT_THROW(model_from_json(Json::parse(R"({"model":"one-draw","matrix":[[1,0]]})")),
               std::invalid_argument);
  EXPECT_THROW(model_from_json(Json::parse(R"({"model":"one-draw","matrix":[[-1,0],[0,1]]})")),
               std::invalid_argument);
  EXPECT_THROW(model_from_json(Json::parse(R"({"model":"one-draw","matrix":[[1,0],[0,1]],"sampling":"with"})")),
               std::invalid_argument);
  EXPECT_THROW(model_from_json(Json::parse(R"({"model":"two-draw","matrix":[[1,0],[0,1],[1,1]],"w0":0})")),
               std::invalid_argument);
  EXPECT_THROW(model_from_json(Json::parse(R"([1,2])")), std::invalid_argument);
  const UrnModel m = model_from_json(Json::parse(R"({"model":"two-draw","matrix":[[15,3],[4,1],["3","21"]]})"));
  const auto& two = std::get<TwoDrawModel>(m);
  EXPECT_EQ(two.w0, 2);
  EXPECT_EQ(two.sampling, Sampling::WithoutReplacement);
}

TEST(PredictionJson, RoundTripOverAnalyses) {
  const std::vector<UrnModel> models{
      TwoDrawModel{{15, 3, 4, 1, 3, 21}}, TwoDrawModel{{35, 9, 1, 1, 3, 21}},
      OneDrawModel{{1, 0, 0, 1}, 2, 1},   TwoDrawModel{{2, 0, 1, 1, 0, 2}},
      OneDrawModel{{2, 1, 1, 2}},          TwoDrawModel{{3, 1, 0, 4, 2, 2}},
  };
  for (const auto& m : models) {
    const LimitPrediction p = analyze(m).prediction;
    const LimitPrediction back = prediction_from_json(prediction_to_json(p));
    EXPECT_EQ(prediction_to_json(back).dump(), prediction_to_json(p).dump());
    EXPECT_EQ(back.kind, p.kind);
    ASSERT_EQ(back.certain_points.size(), p.certain_points.size());
    for (std::size_t i = 0; i < p.certain_points.size(); ++i) {
      expect_same_root(back.certain_points[i].point, p.certain_points[i].point);
      EXPECT_EQ(back.certain_points[i].verdict, p.certain_points[i].verdict);
      EXPECT_EQ(back.certain_points[i].citations, p.certain_points[i].citations);
    }
    ASSERT_EQ(back.excluded_points.size(), p.excluded_points.size());
    for (std::size_t i = 0; i < p.excluded_points.size(); ++i) {
      expect_same_root(back.excluded_points[i].point, p.excluded_points[i].point);
      EXPECT_EQ(back.excluded_points[i].reason, p.excluded_points[i].reason);
    }
  }
}

TEST(PredictionJson, IrrationalRootHasNullValue) {
  const auto roots = roots_in_unit_interval(testing::P({-1, 0, 2}));  // 2x^2 - 1
  ASSERT_EQ(roots.size(), 1u);
  const Json j = root_to_json(roots[0]);
  EXPECT_TRUE(j["value"].is_null());
  EXPECT_NEAR(j["approx"].get<double>(), 0.7071067811865476, 1e-12);
  expect_same_root(root_from_json(j), roots[0]);
}

TEST(AnalysisJson, CitesTheoremsByStableNames) {
  const std::string text = analysis_to_json(analyze(TwoDrawModel{{15, 3, 4, 1, 3, 21}})).dump();
  EXPECT_NE(text.find("\"theorem:pem\""), std::string::npos);
  EXPECT_NE(text.find("\"theorem:stable\""), std::string::npos);
  EXPECT_NE(text.find("\"point-mass-set\""), std::string::npos);
  const std::string touch = analysis_to_json(analyze(TwoDrawModel{{35, 9, 1, 1, 3, 21}})).dump();
  EXPECT_NE(touch.find("\"theorem:pem2\""), std::string::npos);
  EXPECT_NE(touch.find("\"touchpoint\""), std::string::npos);
}

TEST(Csv, ReplicatesAndTrajectories) {
  SimConfig c{OneDrawModel{{1, 0, 0, 1}}, 10, 2, 3, true, 5};
  const auto results = run_replicates(c);
  std::ostringstream out;
  write_replicates_csv(out, results);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "replicate,final_W,final_B,final_Z");
  std::getline(in, line);
  EXPECT_EQ(line, "0," + format_double(results[0].final_W) + "," + format_double(results[0].final_B) + "," +
                      format_double(results[0].final_Z));
  std::ostringstream traj;
  write_trajectory_csv(traj, results);
  const std::string t = traj.str();
  EXPECT_EQ(t.substr(0, t.find('\n')), "replicate,step,Z");
  EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 1 + 2 * 3);  // steps 0, 5, 10
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(HistogramText, OneLinePerBin) {
  const std::vector<std::size_t> counts{3, 0, 1, 0, 2};
  const std::string text = histogram_text(counts);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
  EXPECT_EQ(text.substr(0, text.find('\n')).rfind("[0.00, 0.20)      3 ###", 0), 0u);
}

TEST(ReportJson, CarriesCountsAndVerdict) {
  const UrnModel model = TwoDrawModel{{15, 3, 4, 1, 3, 21}};
  const auto report = verify(model, analyze(model).prediction, SimConfig{model, 500, 20, 1});
  const Json j = report_to_json(report);
  EXPECT_EQ(j["verdict"], std::string(to_string(report.verdict)));
  EXPECT_EQ(j["replicates"], 20);
  EXPECT_EQ(j["cluster_counts"].size(), 3u);
  EXPECT_EQ(j["histogram"].size(), 50u);
}

}  // namespace
}  // namespace polya

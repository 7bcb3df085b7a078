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


// Command-line front end: analyze, simulate, verify, selftest.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "polya/analysis.hpp"
#include "polya/io.hpp"
#include "polya/montecarlo.hpp"
#include "polya/selftest.hpp"

namespace {

using namespace polya;

constexpr int kExitError = 1;
constexpr int kExitInconsistent = 2;

struct ModelArgs {
  std::string one_draw;
  std::string two_draw;
  std::string model_file;
  std::string w0;
  std::string b0;
  std::string sampling;
};

struct SimArgs {
  std::uint64_t steps = 10000;
  std::uint64_t replicates = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string trajectory;
  std::uint64_t stride = 100;
};

struct OutArgs {
  std::string out;
  std::string format;
};

void add_model_options(CLI::App& cmd, ModelArgs& m) {
  auto* one = cmd.add_option("--one-draw", m.one_draw, "one-draw matrix a,b,c,d");
  auto* two = cmd.add_option("--two-draw", m.two_draw, "two-draw matrix a,b,c,d,e,f");
  auto* file = cmd.add_option("--model", m.model_file, "model JSON file");
  one->excludes(two)->excludes(file);
  two->excludes(file);
  cmd.add_option("--w0", m.w0, "initial white balls (rational)");
  cmd.add_option("--b0", m.b0, "initial black balls (rational)");
  cmd.add_option("--sampling", m.sampling, "two-draw sampling")->check(CLI::IsMember({"with", "without"}));
}

void add_sim_options(CLI::App& cmd, SimArgs& s) {
  cmd.add_option("--steps", s.steps, "draws per replicate")->check(CLI::PositiveNumber);
  cmd.add_option("--replicates", s.replicates, "number of replicates")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", s.seed, "base seed");
  cmd.add_option("--jobs", s.jobs, "worker threads")->check(CLI::PositiveNumber);
}

void add_out_options(CLI::App& cmd, OutArgs& o, const std::string& default_format) {
  o.format = default_format;
  cmd.add_option("--out", o.out, "output path (default: standard output)");
  cmd.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
}

UrnModel build_model(const ModelArgs& a) {
  UrnModel model;
  if (!a.model_file.empty()) {
    model = read_model_file(a.model_file);
  } else if (!a.one_draw.empty()) {
    const auto v = parse_rational_list(a.one_draw);
    if (v.size() != 4) throw std::invalid_argument("--one-draw needs 4 entries, got " + std::to_string(v.size()));
    model = OneDrawModel{{v[0], v[1], v[2], v[3]}};
  } else if (!a.two_draw.empty()) {
    const auto v = parse_rational_list(a.two_draw);
    if (v.size() != 6) throw std::invalid_argument("--two-draw needs 6 entries, got " + std::to_string(v.size()));
    model = TwoDrawModel{{v[0], v[1], v[2], v[3], v[4], v[5]}};
  } else {
    throw std::invalid_argument("one of --one-draw, --two-draw or --model is required");
  }
  std::visit(
      [&](auto& m) {
        if (!a.w0.empty()) m.w0 = parse_rational(a.w0);
        if (!a.b0.empty()) m.b0 = parse_rational(a.b0);
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, TwoDrawModel>) {
          if (!a.sampling.empty()) {
            m.sampling = a.sampling == "with" ? Sampling::WithReplacement : Sampling::WithoutReplacement;
          }
        } else if (!a.sampling.empty()) {
          throw std::invalid_argument("--sampling applies to two-draw models only");
        }
      },
      model);
  validate(model);
  return model;
}

SimConfig build_config(const UrnModel& model, const SimArgs& s) {
  SimConfig c{model, s.steps, s.replicates, s.seed, !s.trajectory.empty(), s.stride};
  c.validate();
  return c;
}

// Writes to the path, or to standard output when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

std::string text_analysis(const Analysis& a) {
  std::ostringstream out;
  out << "drift:";
  for (const auto& c : a.drift.coeffs()) out << ' ' << to_string(c);
  out << "\n";
  if (a.meta.attainable) {
    out << "attainable: [" << to_string(a.meta.attainable->lo) << ", " << to_string(a.meta.attainable->hi) << "]\n";
  }
  out << "prediction: " << to_string(a.prediction.kind) << "\n";
  if (a.prediction.beta_params) {
    out << "  beta(" << to_string(a.prediction.beta_params->first) << ", "
        << to_string(a.prediction.beta_params->second) << ")\n";
  }
  auto point = [](const RootRecord& r) { return r.exact ? to_string(*r.exact) : format_double(r.approx); };
  for (const auto& p : a.prediction.certain_points) {
    out << "  " << point(p.point) << ' ' << to_string(p.cls) << ' ' << to_string(p.verdict);
    for (Theorem t : p.citations) out << ' ' << to_string(t);
    out << "\n";
  }
  for (const auto& p : a.prediction.excluded_points) {
    out << "  " << point(p.point) << ' ' << to_string(p.cls) << " excluded " << to_string(p.reason) << "\n";
  }
  return out.str();
}

std::string text_summary(std::span<const ReplicateResult> results) {
  std::vector<double> finals;
  for (const auto& r : results) finals.push_back(r.final_Z);
  const double mean = std::accumulate(finals.begin(), finals.end(), 0.0) / static_cast<double>(finals.size());
  std::ostringstream out;
  out << "replicates: " << finals.size() << "\nmean final Z: " << format_double(mean) << "\n";
  out << histogram_text(histogram(finals, 50));
  return out.str();
}

int cmd_analyze(const ModelArgs& m, const OutArgs& o) {
  const Analysis a = analyze(build_model(m));
  emit(o.out, o.format == "text" ? text_analysis(a) : analysis_to_json(a).dump(2) + "\n");
  return 0;
}

int cmd_simulate(const ModelArgs& m, const SimArgs& s, const OutArgs& o) {
  const SimConfig config = build_config(build_model(m), s);
  const auto results = run_replicates(config, s.jobs);
  if (!s.trajectory.empty()) {
    std::ostringstream csv;
    write_trajectory_csv(csv, results);
    emit(s.trajectory, csv.str());
  }
  if (o.format == "json") {
    Json j;
    j["model"] = model_to_json(config.model);
    j["n_steps"] = config.n_steps;
    j["base_seed"] = config.base_seed;
    Json rows = Json::array();
    for (const auto& r : results) {
      rows.push_back(Json{{"replicate", r.replicate_index}, {"final_W", r.final_W},
                          {"final_B", r.final_B}, {"final_Z", r.final_Z}, {"final_T", r.final_T}});
    }
    j["replicates"] = std::move(rows);
    emit(o.out, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream csv;
  write_replicates_csv(csv, results);
  if (o.format == "text") {
    if (!o.out.empty()) emit(o.out, csv.str());
    std::cout << text_summary(results);
  } else {
    emit(o.out, csv.str());
  }
  return 0;
}

int cmd_verify(const ModelArgs& m, const SimArgs& s, const OutArgs& o, const std::string& prediction_file,
               double radius) {
  const UrnModel model = build_model(m);
  LimitPrediction prediction;
  if (prediction_file.empty()) {
    prediction = analyze(model).prediction;
  } else {
    std::ifstream in(prediction_file);
    if (!in) throw std::runtime_error("cannot open prediction file " + prediction_file);
    Json j = Json::parse(in);
    prediction = prediction_from_json(j.contains("prediction") ? j.at("prediction") : j);
  }
  const SimConfig config = build_config(model, s);
  VerifyOptions options;
  options.radius = radius;
  options.parallelism = s.jobs;
  const auto results = run_replicates(config, s.jobs);
  if (!s.trajectory.empty()) {
    std::ostringstream csv;
    write_trajectory_csv(csv, results);
    emit(s.trajectory, csv.str());
  }
  const VerificationReport report = verify_results(prediction, results, config, options);
  if (o.format == "text") {
    std::ostringstream out;
    out << "verdict: " << to_string(report.verdict) << "\n";
    for (const auto& r : report.reasons) out << "  " << r << "\n";
    for (std::size_t i = 0; i < report.allowed_counts.size(); ++i) {
      out << "  near " << format_double(report.allowed_points[i]) << ": " << report.allowed_counts[i] << "\n";
    }
    for (std::size_t i = 0; i < report.excluded_counts.size(); ++i) {
      out << "  near excluded " << format_double(report.excluded_points[i]) << ": " << report.excluded_counts[i] << "\n";
    }
    out << "  unassigned: " << report.unassigned_count << "\n";
    if (report.ks_statistic) {
      out << "  KS " << format_double(*report.ks_statistic) << " threshold " << format_double(*report.ks_threshold) << "\n";
    }
    out << histogram_text(report.histogram);
    emit(o.out, out.str());
  } else {
    emit(o.out, report_to_json(report).dump(2) + "\n");
  }
  return report.verdict == VerificationVerdict::Inconsistent ? kExitInconsistent : 0;
}

int cmd_selftest(std::uint64_t seed, bool mutate) {
  SelftestOptions options;
  options.seed = seed;
  if (mutate) options.table1 = mutated_table1;
  bool ok = true;
  for (const auto& suite : run_selftest(options)) {
    std::printf("%-20s %s  (%zu cases", suite.name.c_str(), suite.passed() ? "PASS" : "FAIL", suite.cases);
    if (suite.failures) std::printf(", %zu failed; %s", suite.failures, suite.first_failure.c_str());
    std::printf(")\n");
    ok = ok && suite.passed();
  }
  return ok ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit analysis and simulation of generalized Polya urns"};
  app.require_subcommand(1);

  ModelArgs model_args;
  SimArgs sim_args;
  OutArgs analyze_out, simulate_out, verify_out;

  auto* analyze_cmd = app.add_subcommand("analyze", "exact drift, equilibria and limit prediction");
  add_model_options(*analyze_cmd, model_args);
  add_out_options(*analyze_cmd, analyze_out, "json");

  auto* simulate_cmd = app.add_subcommand("simulate", "seeded replicate simulation");
  add_model_options(*simulate_cmd, model_args);
  add_sim_options(*simulate_cmd, sim_args);
  add_out_options(*simulate_cmd, simulate_out, "csv");
  simulate_cmd->add_option("--trajectory", sim_args.trajectory, "trajectory CSV path");
  simulate_cmd->add_option("--stride", sim_args.stride, "trajectory sampling stride")->check(CLI::PositiveNumber);

  std::string prediction_file;
  double radius = 0.05;
  auto* verify_cmd = app.add_subcommand("verify", "simulate and check against the prediction");
  add_model_options(*verify_cmd, model_args);
  add_sim_options(*verify_cmd, sim_args);
  add_out_options(*verify_cmd, verify_out, "json");
  verify_cmd->add_option("--prediction", prediction_file, "prediction JSON to test instead of the derived one");
  verify_cmd->add_option("--radius", radius, "clustering radius")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trajectory", sim_args.trajectory, "trajectory CSV path");
  verify_cmd->add_option("--stride", sim_args.stride, "trajectory sampling stride")->check(CLI::PositiveNumber);

  std::uint64_t selftest_seed = SelftestOptions{}.seed;
  bool mutate = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "exact identity suites");
  selftest_cmd->add_option("--seed", selftest_seed, "seed for the random matrices");
  selftest_cmd->add_flag("--mutate-table1", mutate, "perturb one coefficient table entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(model_args, analyze_out);
    if (simulate_cmd->parsed()) return cmd_simulate(model_args, sim_args, simulate_out);
    if (verify_cmd->parsed()) return cmd_verify(model_args, sim_args, verify_out, prediction_file, radius);
    if (selftest_cmd->parsed()) return cmd_selftest(selftest_seed, mutate);
  } catch (const std::exception& e) {
    std::cerr << "polya_sa: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

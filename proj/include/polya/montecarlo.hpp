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

#ifndef POLYA_MONTECARLO_HPP
#define POLYA_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polya/sa.hpp"
#include "polya/urns.hpp"

namespace polya {

struct SimConfig {
  UrnModel model;
  std::uint64_t n_steps = 10000;
  std::uint64_t replicates = 1;
  std::uint64_t base_seed = 0;
  bool record_trajectory = false;
  std::uint64_t trajectory_stride = 1;

  /// Throws std::invalid_argument on zero steps, replicates or stride.
  void validate() const;
};

struct ReplicateResult {
  std::uint64_t replicate_index = 0;
  double final_W = 0.0;
  double final_B = 0.0;
  double final_Z = 0.0;
  double final_T = 0.0;
  /// (step, Z) at step 0, every stride steps, and the final step.
  std::vector<std::pair<std::uint64_t, double>> trajectory;

  friend bool operator==(const ReplicateResult&, const ReplicateResult&) = default;
};

/// splitmix64 output function: a bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replicate `index`: mix64(mix64(base_seed) + golden * (index + 1)).
/// Depends only on the pair, so replicates can run in any order.
constexpr std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix64(mix64(base_seed) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

/// Per-replicate generator: mt19937_64 seeded from stream_seed, uniforms
/// built from the top 53 bits.
class StreamRng {
 public:
  StreamRng(std::uint64_t base_seed, std::uint64_t index) : engine_(stream_seed(base_seed, index)) {}

  /// Top 53 bits of the next output.
  std::uint64_t bits() { return engine_() >> 11; }
  /// Uniform on [0, 1): bits() * 2^-53.
  double uniform() { return static_cast<double>(bits()) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Exact transition: picks the first outcome whose cumulative probability
/// exceeds u in [0, 1).
UrnState step(const UrnState& state, const UrnModel& model, double u);

inline UrnState step(const UrnState& state, const UrnModel& model, StreamRng& rng) {
  return step(state, model, rng.uniform());
}

/// One replicate from the model's initial composition.
ReplicateResult simulate(const SimConfig& config, std::uint64_t replicate_index);

/// All replicates in index order; identical for every parallelism >= 1.
std::vector<ReplicateResult> run_replicates(const SimConfig& config, unsigned parallelism = 1);

struct ClusterCounts {
  std::vector<std::size_t> counts;  // aligned with the candidates
  std::size_t unassigned = 0;
};

/// Assigns each sample to the unique candidate within `radius`. Throws
/// std::invalid_argument if two candidates are within 2 * radius.
ClusterCounts cluster_finals(std::span<const double> samples, std::span<const double> candidates,
                             double radius);

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Asymptotic one-sample Kolmogorov coefficient c(level) = sqrt(-ln(level/2)/2).
double ks_critical_coefficient(double level);

struct KsResult {
  double statistic = 0.0;
  std::size_t n = 0;

  /// c(level) / sqrt(n).
  double threshold(double level) const;
};

/// sup |F_n - Beta(alpha, beta) CDF|. Throws on empty samples or
/// non-positive parameters.
KsResult ks_beta(std::span<const double> samples, const Rational& alpha, const Rational& beta);

enum class VerificationVerdict { Consistent, Inconsistent, Inconclusive };
std::string_view to_string(VerificationVerdict verdict);

struct VerifyOptions {
  double radius = 0.05;
  double min_assigned_fraction = 0.90;
  double max_excluded_fraction = 0.02;
  double ks_level = 0.01;
  std::size_t histogram_bins = 50;
  unsigned parallelism = 1;
};

struct VerificationReport {
  LimitPrediction prediction;
  VerifyOptions options;
  std::uint64_t replicates = 0;
  std::uint64_t n_steps = 0;
  std::uint64_t base_seed = 0;
  std::vector<double> allowed_points;
  std::vector<double> excluded_points;
  std::vector<std::size_t> allowed_counts;
  std::vector<std::size_t> excluded_counts;
  std::size_t unassigned_count = 0;
  std::optional<double> ks_statistic;
  std::optional<double> ks_threshold;
  std::vector<std::size_t> histogram;
  std::optional<double> max_bin_mass;
  VerificationVerdict verdict = VerificationVerdict::Inconclusive;
  std::vector<std::string> reasons;
};

/// Fixed-width histogram of samples over [0, 1]; 1.0 falls in the last bin.
std::vector<std::size_t> histogram(std::span<const double> samples, std::size_t bins);

/// Simulates the configured replicates and checks them against the prediction.
VerificationReport verify(const UrnModel& model, const LimitPrediction& prediction,
                          const SimConfig& config, const VerifyOptions& options = {});

/// Same check against replicates already simulated.
VerificationReport verify_results(const LimitPrediction& prediction,
                                  std::span<const ReplicateResult> results,
                                  const SimConfig& config, const VerifyOptions& options = {});

}  // namespace polya

#endif  // POLYA_MONTECARLO_HPP

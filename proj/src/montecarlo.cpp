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


#include "polya/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace polya {
namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kUnitBits = 53;

// Integer representation of a model: every count is multiplied by the common
// denominator `scale` so that transitions are integer additions and the
// cumulative comparison u < p becomes k * den < num * 2^53 for u = k 2^-53.
struct IntegerKernel {
  bool two_draw = false;
  bool without_replacement = false;
  std::uint64_t scale = 1;
  std::uint64_t w0 = 0, b0 = 0;
  // Per outcome: added white, added black.
  std::array<std::uint64_t, 3> dw{}, db{};
  std::uint64_t max_row = 0;
};

std::uint64_t to_u64(const Integer& z) {
  if (sgn(z) < 0 || !z.fits_ulong_p()) throw std::overflow_error("count out of range");
  return z.get_ui();
}

std::optional<IntegerKernel> make_kernel(const UrnModel& model) {
  std::vector<Rational> values;
  IntegerKernel k;
  if (const auto* one = std::get_if<OneDrawModel>(&model)) {
    const auto& m = one->matrix;
    values = {one->w0, one->b0, m.a, m.b, m.c, m.d};
  } else {
    const auto& two = std::get<TwoDrawModel>(model);
    const auto& m = two.matrix;
    values = {two.w0, two.b0, m.a, m.b, m.c, m.d, m.e, m.f};
    k.two_draw = true;
    k.without_replacement = two.sampling == Sampling::WithoutReplacement;
  }
  Integer scale = 1;
  for (const auto& v : values) scale = lcm(scale, Integer(v.get_den()));
  if (scale > Integer(1u << 20)) return std::nullopt;
  try {
    std::vector<std::uint64_t> ints;
    for (const auto& v : values) {
      const Rational scaled = v * Rational(scale);
      ints.push_back(to_u64(scaled.get_num()));
    }
    k.scale = scale.get_ui();
    k.w0 = ints[0];
    k.b0 = ints[1];
    const std::size_t rows = k.two_draw ? 3 : 2;
    for (std::size_t r = 0; r < rows; ++r) {
      k.dw[r] = ints[2 + 2 * r];
      k.db[r] = ints[3 + 2 * r];
      k.max_row = std::max(k.max_row, k.dw[r] + k.db[r]);
    }
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  return k;
}

// Totals below 2^32 keep every product in the comparison below 2^128.
constexpr std::uint64_t kTotalLimit = std::uint64_t{1} << 32;

bool fits(const IntegerKernel& k, std::uint64_t n_steps) {
  const u128 bound = u128(k.w0) + k.b0 + u128(k.max_row) * n_steps;
  return bound < kTotalLimit;
}

// Index of the drawn outcome for u = draw * 2^-53.
std::size_t pick(const IntegerKernel& k, std::uint64_t w, std::uint64_t b, std::uint64_t draw) {
  const u128 t = u128(w) + b;
  const u128 lhs_unit = u128(draw);
  if (!k.two_draw) {
    return lhs_unit * t < u128(w) << kUnitBits ? 0 : 1;
  }
  u128 den, ww, wb;
  if (k.without_replacement) {
    const u128 s = k.scale;
    den = t * (t - s);
    ww = u128(w) * (w - s);
    wb = 2 * u128(w) * b;
  } else {
    den = t * t;
    ww = u128(w) * w;
    wb = 2 * u128(w) * b;
  }
  const u128 lhs = lhs_unit * den;
  if (lhs < ww << kUnitBits) return 0;
  if (lhs < (ww + wb) << kUnitBits) return 1;
  return 2;
}

ReplicateResult simulate_integer(const IntegerKernel& k, const SimConfig& config,
                                 std::uint64_t index) {
  if (k.two_draw && k.without_replacement && (k.w0 < k.scale || k.b0 < k.scale)) {
    throw std::invalid_argument("two draws without replacement need at least one ball of each color");
  }
  StreamRng rng(config.base_seed, index);
  std::uint64_t w = k.w0, b = k.b0;
  ReplicateResult out;
  out.replicate_index = index;
  auto fraction = [&] { return static_cast<double>(w) / static_cast<double>(w + b); };
  if (config.record_trajectory) out.trajectory.emplace_back(0, fraction());
  for (std::uint64_t n = 1; n <= config.n_steps; ++n) {
    const std::size_t o = pick(k, w, b, rng.bits());
    w += k.dw[o];
    b += k.db[o];
    if (config.record_trajectory &&
        (n % config.trajectory_stride == 0 || n == config.n_steps)) {
      out.trajectory.emplace_back(n, fraction());
    }
  }
  const double s = static_cast<double>(k.scale);
  out.final_W = static_cast<double>(w) / s;
  out.final_B = static_cast<double>(b) / s;
  out.final_T = static_cast<double>(w + b) / s;
  out.final_Z = fraction();
  return out;
}

ReplicateResult simulate_rational(const SimConfig& config, std::uint64_t index) {
  StreamRng rng(config.base_seed, index);
  UrnState state = initial_state(config.model);
  ReplicateResult out;
  out.replicate_index = index;
  auto fraction = [&] { return state.fraction().get_d(); };
  if (config.record_trajectory) out.trajectory.emplace_back(0, fraction());
  for (std::uint64_t n = 1; n <= config.n_steps; ++n) {
    state = step(state, config.model, rng);
    if (config.record_trajectory &&
        (n % config.trajectory_stride == 0 || n == config.n_steps)) {
      out.trajectory.emplace_back(n, fraction());
    }
  }
  out.final_W = state.white.get_d();
  out.final_B = state.black.get_d();
  out.final_T = state.total().get_d();
  out.final_Z = fraction();
  return out;
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

void SimConfig::validate() const {
  if (n_steps == 0) throw std::invalid_argument("n_steps must be positive");
  if (replicates == 0) throw std::invalid_argument("replicates must be positive");
  if (trajectory_stride == 0) throw std::invalid_argument("trajectory_stride must be positive");
  polya::validate(model);
}

UrnState step(const UrnState& state, const UrnModel& model, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("uniform variate must lie in [0, 1)");
  const StepDistribution dist = step_distribution(state, model);
  const Rational exact_u(u);
  Rational cumulative = 0;
  const StepOutcome* chosen = &dist.back();
  for (const auto& o : dist) {
    cumulative += o.probability;
    if (exact_u < cumulative) {
      chosen = &o;
      break;
    }
  }
  UrnState next{state.white + chosen->d_white,
                state.black + (chosen->d_total - chosen->d_white), state.step + 1};
  return next;
}

ReplicateResult simulate(const SimConfig& config, std::uint64_t replicate_index) {
  config.validate();
  if (const auto kernel = make_kernel(config.model); kernel && fits(*kernel, config.n_steps)) {
    return simulate_integer(*kernel, config, replicate_index);
  }
  return simulate_rational(config, replicate_index);
}

std::vector<ReplicateResult> run_replicates(const SimConfig& config, unsigned parallelism) {
  config.validate();
  std::vector<ReplicateResult> results(config.replicates);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(parallelism, 1u), config.replicates));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::uint64_t i = next++; i < config.replicates; i = next++) {
      try {
        results[i] = simulate(config, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.replicates;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

ClusterCounts cluster_finals(std::span<const double> samples, std::span<const double> candidates,
                             double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (std::fabs(candidates[i] - candidates[j]) <= 2.0 * radius) {
        throw std::invalid_argument("candidate points closer than twice the radius");
      }
    }
  }
  ClusterCounts out;
  out.counts.assign(candidates.size(), 0);
  for (double s : samples) {
    bool assigned = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (std::fabs(s - candidates[i]) <= radius) {
        ++out.counts[i];
        assigned = true;
        break;
      }
    }
    if (!assigned) ++out.unassigned;
  }
  return out;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  // The fraction converges fast for x below the mean; use symmetry above it.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double ks_critical_coefficient(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(level / 2.0));
}

double KsResult::threshold(double level) const {
  return ks_critical_coefficient(level) / std::sqrt(static_cast<double>(n));
}

KsResult ks_beta(std::span<const double> samples, const Rational& alpha, const Rational& beta) {
  if (samples.empty()) throw std::invalid_argument("ks_beta needs at least one sample");
  if (sgn(alpha) <= 0 || sgn(beta) <= 0) throw std::invalid_argument("beta parameters must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double a = alpha.get_d(), b = beta.get_d();
  const double n = static_cast<double>(sorted.size());
  KsResult out;
  out.n = sorted.size();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = regularized_incomplete_beta(a, b, sorted[i]);
    out.statistic = std::max({out.statistic, (i + 1) / n - cdf, cdf - i / n});
  }
  return out;
}

std::string_view to_string(VerificationVerdict verdict) {
  switch (verdict) {
    case VerificationVerdict::Consistent: return "consistent";
    case VerificationVerdict::Inconsistent: return "inconsistent";
    case VerificationVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<std::size_t> histogram(std::span<const double> samples, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  std::vector<std::size_t> out(bins, 0);
  for (double s : samples) {
    const double clamped = std::clamp(s, 0.0, 1.0);
    const auto bin = std::min(bins - 1, static_cast<std::size_t>(clamped * static_cast<double>(bins)));
    ++out[bin];
  }
  return out;
}

VerificationReport verify(const UrnModel& model, const LimitPrediction& prediction,
                          const SimConfig& config, const VerifyOptions& options) {
  SimConfig run = config;
  run.model = model;
  run.record_trajectory = false;
  const auto results = run_replicates(run, options.parallelism);
  return verify_results(prediction, results, run, options);
}

VerificationReport verify_results(const LimitPrediction& prediction,
                                  std::span<const ReplicateResult> results,
                                  const SimConfig& config, const VerifyOptions& options) {
  VerificationReport report;
  report.prediction = prediction;
  report.options = options;
  report.replicates = results.size();
  report.n_steps = config.n_steps;
  report.base_seed = config.base_seed;
  std::vector<double> finals;
  finals.reserve(results.size());
  for (const auto& r : results) finals.push_back(r.final_Z);
  report.histogram = histogram(finals, options.histogram_bins);
  report.unassigned_count = finals.size();
  const double total = static_cast<double>(finals.size());
  auto fail = [&](std::string reason) {
    report.verdict = VerificationVerdict::Inconsistent;
    report.reasons.push_back(std::move(reason));
  };

  switch (prediction.kind) {
    case LimitKind::PointMassSet: {
      for (const auto& p : prediction.certain_points) report.allowed_points.push_back(p.point.approx);
      for (const auto& p : prediction.excluded_points) report.excluded_points.push_back(p.point.approx);
      std::vector<double> candidates = report.allowed_points;
      candidates.insert(candidates.end(), report.excluded_points.begin(), report.excluded_points.end());
      ClusterCounts counts;
      try {
        counts = cluster_finals(finals, candidates, options.radius);
      } catch (const std::invalid_argument&) {
        report.verdict = VerificationVerdict::Inconclusive;
        report.reasons.push_back("predicted points closer than twice the clustering radius");
        return report;
      }
      const auto split = counts.counts.begin() + static_cast<std::ptrdiff_t>(report.allowed_points.size());
      report.allowed_counts.assign(counts.counts.begin(), split);
      report.excluded_counts.assign(split, counts.counts.end());
      report.unassigned_count = counts.unassigned;
      std::size_t allowed = 0, excluded = 0;
      for (auto c : report.allowed_counts) allowed += c;
      for (auto c : report.excluded_counts) excluded += c;
      report.verdict = VerificationVerdict::Consistent;
      if (total == 0.0) {
        report.verdict = VerificationVerdict::Inconclusive;
        report.reasons.push_back("no replicates");
        break;
      }
      if (allowed / total < options.min_assigned_fraction) {
        fail("fraction near allowed points " + std::to_string(allowed / total) + " below " +
             std::to_string(options.min_assigned_fraction));
      }
      if (excluded / total > options.max_excluded_fraction) {
        fail("fraction near excluded points " + std::to_string(excluded / total) + " above " +
             std::to_string(options.max_excluded_fraction));
      }
      break;
    }
    case LimitKind::BetaDistribution: {
      if (!prediction.beta_params || finals.empty()) {
        report.verdict = VerificationVerdict::Inconclusive;
        report.reasons.push_back("no Beta parameters or no replicates");
        break;
      }
      const KsResult ks = ks_beta(finals, prediction.beta_params->first, prediction.beta_params->second);
      report.ks_statistic = ks.statistic;
      report.ks_threshold = ks.threshold(options.ks_level);
      report.verdict = VerificationVerdict::Consistent;
      if (ks.statistic >= *report.ks_threshold) {
        fail("KS statistic " + std::to_string(ks.statistic) + " not below " +
             std::to_string(*report.ks_threshold));
      }
      break;
    }
    case LimitKind::ContinuousNoAtoms: {
      const auto peak = std::max_element(report.histogram.begin(), report.histogram.end());
      report.max_bin_mass = total > 0.0 ? static_cast<double>(*peak) / total : 0.0;
      report.verdict = VerificationVerdict::Inconclusive;
      report.reasons.push_back("continuous limit without atoms; histogram reported only");
      break;
    }
    case LimitKind::Unknown:
      report.verdict = VerificationVerdict::Inconclusive;
      report.reasons.push_back("no prediction to test");
      break;
  }
  return report;
}

}  // namespace polya

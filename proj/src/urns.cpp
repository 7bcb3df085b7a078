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

#include "polya/urns.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace polya {
namespace {

const RatPoly kX = RatPoly::identity();
const RatPoly kOneMinusX = linear(Rational(-1), Rational(1));
const RatPoly kXOneMinusX = kX * kOneMinusX;

Rational abs_sum(const RatPoly& p) {
  Rational s = 0;
  for (const auto& c : p.coeffs()) s += abs(c);
  return s;
}

// Any positive constant bounds a quantity that is identically zero.
Rational positive_or_one(const Rational& bound) { return sgn(bound) > 0 ? bound : Rational(1); }

void require_nonnegative(std::initializer_list<const Rational*> entries) {
  bool any_positive = false;
  for (const Rational* v : entries) {
    if (sgn(*v) < 0) throw std::invalid_argument("replacement matrix entries must be nonnegative");
    if (sgn(*v) > 0) any_positive = true;
  }
  if (!any_positive) throw std::invalid_argument("replacement matrix must have a positive entry");
}

// Sample points in [0, 1) with assorted denominators, fixed across runs.
std::vector<Rational> identity_sample_points() {
  std::mt19937_64 rng(0x5eed0f1d);
  std::uniform_int_distribution<long> den_dist(2, 97);
  std::vector<Rational> xs;
  while (xs.size() < 20) {
    const long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(0, den - 1);
    xs.push_back(make_rational(num_dist(rng), den));
  }
  return xs;
}

RatPoly case4_error_pullback(const ReplacementMatrixTwo& m) {
  // E_hat(y) = [K y + M]^2 y (1 - y) with y = 2x / (1 + x); multiplying by
  // (1 + x)^4 > 0 leaves 2 x (1 - x) [(2K + M) x + M]^2.
  const Rational K = 2 * m.e + m.f - 2 * m.c - m.d;
  const Rational M = 2 * m.c - 2 * m.e;
  const RatPoly inner = linear(2 * K + M, M);
  return Rational(2) * kXOneMinusX * inner * inner;
}

void check_case4_identity(const ReplacementMatrixTwo& m, const RatPoly& g_hat) {
  const RatPoly g = drift_two(m);
  for (const Rational& x : identity_sample_points()) {
    const Rational one_plus = 1 + x;
    const Rational lhs = Rational(1, 2) * one_plus * one_plus * g_hat(case4_to_hat(x));
    const Rational rhs = g(x) / (1 - x);
    if (lhs != rhs) throw std::logic_error("time-changed drift identity failed for degenerate case 4");
  }
}

}  // namespace

void ReplacementMatrixOne::validate() const { require_nonnegative({&a, &b, &c, &d}); }

void ReplacementMatrixTwo::validate() const { require_nonnegative({&a, &b, &c, &d, &e, &f}); }

void validate(const UrnModel& model) {
  std::visit(
      [](const auto& m) {
        m.matrix.validate();
        if (sgn(m.w0) <= 0 || sgn(m.b0) <= 0) {
          throw std::invalid_argument("initial white and black counts must be positive");
        }
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, TwoDrawModel>) {
          if (m.sampling == Sampling::WithoutReplacement && (m.w0 < 2 || m.b0 < 2)) {
            throw std::invalid_argument(
                "two draws without replacement need at least two balls of each color");
          }
        }
      },
      model);
}

UrnState initial_state(const UrnModel& model) {
  return std::visit([](const auto& m) { return UrnState{m.w0, m.b0, 0}; }, model);
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::White: return "W";
    case Outcome::Black: return "B";
    case Outcome::WhiteWhite: return "WW";
    case Outcome::WhiteBlack: return "WB";
    case Outcome::BlackBlack: return "BB";
  }
  return "?";
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::OneDraw: return "one-draw";
    case ModelKind::TwoDrawWithReplacement: return "two-draw-with-replacement";
    case ModelKind::TwoDrawWithoutReplacement: return "two-draw-without-replacement";
  }
  return "?";
}

StepDistribution step_distribution(const UrnState& state, const UrnModel& model) {
  if (sgn(state.white) < 0 || sgn(state.black) < 0) {
    throw std::invalid_argument("urn counts must be nonnegative");
  }
  const Rational total = state.total();
  if (sgn(total) <= 0) throw std::invalid_argument("urn must contain a positive number of balls");

  if (const auto* one = std::get_if<OneDrawModel>(&model)) {
    const auto& m = one->matrix;
    return {{Outcome::White, state.white / total, m.a, m.a + m.b},
            {Outcome::Black, state.black / total, m.c, m.c + m.d}};
  }
  const auto& two = std::get<TwoDrawModel>(model);
  const auto& m = two.matrix;
  Rational p_ww, p_wb, p_bb;
  if (two.sampling == Sampling::WithReplacement) {
    const Rational z = state.white / total;
    p_ww = z * z;
    p_wb = 2 * z * (1 - z);
    p_bb = (1 - z) * (1 - z);
  } else {
    if (total < 2) throw std::invalid_argument("two draws without replacement need T >= 2");
    const Rational pairs = total * (total - 1);
    p_ww = state.white * (state.white - 1) / pairs;
    p_wb = 2 * state.white * state.black / pairs;
    p_bb = state.black * (state.black - 1) / pairs;
    if (sgn(p_ww) < 0 || sgn(p_bb) < 0) {
      throw std::invalid_argument("fractional count below one ball gives a negative pair probability");
    }
  }
  return {{Outcome::WhiteWhite, p_ww, m.a, m.a + m.b},
          {Outcome::WhiteBlack, p_wb, m.c, m.c + m.d},
          {Outcome::BlackBlack, p_bb, m.e, m.e + m.f}};
}

// --- one draw -------------------------------------------------------------

RatPoly drift_one(const ReplacementMatrixOne& m) {
  const Rational alpha = m.c + m.d - m.a - m.b;
  const Rational beta = m.a - 2 * m.c - m.d;
  return RatPoly({m.c, beta, alpha});
}

ErrorOne error_one(const ReplacementMatrixOne& m) {
  RatPoly psi = linear(m.c + m.d - m.a - m.b, m.a - m.c);
  RatPoly error = kXOneMinusX * psi * psi;
  return {std::move(psi), std::move(error)};
}

Rational cond_iv_closed_form_one(const UrnState& state, const ReplacementMatrixOne& m) {
  const Rational total = state.total();
  if (sgn(total) <= 0) throw std::invalid_argument("urn must contain a positive number of balls");
  const Rational z = state.white / total;
  const Rational c1 = m.a - m.c;
  const Rational c2 = 2 * m.c + m.d - 2 * m.a - m.b;
  const Rational c3 = m.a + m.b - m.c - m.d;
  const Rational cubic = c1 * z + c2 * z * z + c3 * z * z * z;
  return cubic * (m.c + m.d - m.a - m.b) / ((total + m.a + m.b) * (total + m.c + m.d));
}

Rational drift_one_degenerate(const ReplacementMatrixOne& m) {
  m.validate();
  const Rational white_row = m.a + m.b;
  const Rational black_row = m.c + m.d;
  if (sgn(white_row) > 0 && sgn(black_row) > 0) {
    throw std::invalid_argument("drift_one_degenerate: both row sums are positive");
  }
  // With c + d = 0 the drift is x (a - (a + b) x).
  if (sgn(black_row) == 0) return m.a / white_row;
  return m.c / black_row;
}

// --- two draws ------------------------------------------------------------

RatPoly drift_two(const ReplacementMatrixTwo& m) {
  const Rational alpha = -m.a - m.b + 2 * m.c + 2 * m.d - m.e - m.f;
  const Rational beta = m.a - 4 * m.c - 2 * m.d + 3 * m.e + 2 * m.f;
  const Rational gamma = 2 * m.c - 3 * m.e - m.f;
  return RatPoly({m.e, gamma, beta, alpha});
}

RatPoly psi_explicit_quartic(const ReplacementMatrixTwo& m) {
  const Rational s = m.a + m.b - 2 * m.c - 2 * m.d + m.e + m.f;
  const Rational t = m.a - 2 * m.c + m.e;
  const Rational u = m.e + m.f - m.a - m.b;
  const Rational v = m.e + m.f - m.c - m.d;
  const Rational ae = m.a - m.e;
  const Rational ce = m.c - m.e;
  return RatPoly({2 * ce * ce,
                  ae * ae - 4 * ce * ce + 4 * ce * v,
                  t * t + 2 * ae * u - 8 * ce * v + 2 * v * v,
                  -2 * s * t + u * u - 4 * v * v,
                  s * s});
}

ErrorTwo error_two(const ReplacementMatrixTwo& m) {
  ErrorTwo out;
  out.A = linear(-m.a - m.b + 2 * m.c + 2 * m.d - m.e - m.f, m.a - 2 * m.c + m.e);
  out.B = linear(m.e + m.f - m.a - m.b, m.a - m.e);
  out.C = linear(m.e + m.f - m.c - m.d, m.c - m.e);
  if (!(out.A == out.B - Rational(2) * out.C)) {
    throw std::logic_error("error_two: relation A = B - 2C violated");
  }
  const RatPoly a_plus_c = out.A + out.C;
  out.psi = Rational(2) * kX * kX * a_plus_c * a_plus_c + kXOneMinusX * out.B * out.B +
            Rational(2) * kOneMinusX * kOneMinusX * out.C * out.C;
  if (!(out.psi == psi_explicit_quartic(m))) {
    throw std::logic_error("error_two: decomposition disagrees with the expanded quartic");
  }
  out.error = kXOneMinusX * out.psi;
  return out;
}

Rational two_draw_remainder(const UrnState& state, const ReplacementMatrixTwo& m) {
  const Rational total = state.total();
  if (total <= 1) throw std::invalid_argument("two_draw_remainder needs T > 1");
  const Rational z = state.white / total;
  const Rational alpha = -m.a - m.b + 2 * m.c + 2 * m.d - m.e - m.f;
  return -z * (1 - z) / (total - 1) * (m.a - 2 * m.c + m.e + alpha * z);
}

Table1 table1_polys(const ReplacementMatrixTwo& m) {
  const Rational alpha = -m.a - m.b + 2 * m.c + 2 * m.d - m.e - m.f;
  const Rational beta = m.a - 4 * m.c - 2 * m.d + 3 * m.e + 2 * m.f;
  const Rational gamma = 2 * m.c - 3 * m.e - m.f;
  const Rational& a = m.a;
  const Rational& b = m.b;
  const Rational& c = m.c;
  const Rational& d = m.d;
  const Rational& e = m.e;
  const Rational& f = m.f;

  Table1 t;
  t[0] = {0, 0, a - e, -gamma - a - b, -beta, -alpha};
  t[1] = {0, 2 * c - 2 * e, -2 * gamma - 4 * c - 2 * d + 2 * e, 2 * gamma + 2 * c + 2 * d - 2 * beta,
          2 * beta - 2 * alpha, 2 * alpha};
  t[2] = {0, -gamma - e - f, 2 * gamma + 2 * e + 2 * f - beta, 2 * beta - alpha - gamma - e - f,
          2 * alpha - beta, -alpha};
  for (std::size_t k = 0; k < 6; ++k) {
    if (sgn(t[0][k] + t[1][k] + t[2][k]) != 0) {
      throw std::logic_error("table1_polys: column " + std::to_string(k) + " does not sum to zero");
    }
  }
  return t;
}

std::array<RatPoly, 3> table1_remainders(const ReplacementMatrixTwo& m) {
  const Rational alpha = -m.a - m.b + 2 * m.c + 2 * m.d - m.e - m.f;
  const Rational beta = m.a - 4 * m.c - 2 * m.d + 3 * m.e + 2 * m.f;
  const Rational gamma = 2 * m.c - 3 * m.e - m.f;
  return {RatPoly({m.e - m.a, gamma + m.a + m.b, beta, alpha}),
          Rational(2) * RatPoly({m.c - m.e, -(gamma + m.c + m.d), -beta, -alpha}),
          RatPoly({Rational(0), gamma + m.e + m.f, beta, alpha})};
}

Interval attainable_interval(const ReplacementMatrixTwo& m) {
  const std::array<std::pair<Rational, Rational>, 3> rows{
      {{m.a, m.a + m.b}, {m.c, m.c + m.d}, {m.e, m.e + m.f}}};
  Interval iv;
  bool first = true;
  for (const auto& [white, sum] : rows) {
    if (sgn(sum) <= 0) throw std::invalid_argument("attainable_interval: zero row sum");
    const Rational ratio = white / sum;
    iv.lo = first ? ratio : min(iv.lo, ratio);
    iv.hi = first ? ratio : max(iv.hi, ratio);
    first = false;
  }
  return iv;
}

int degenerate_case(const ReplacementMatrixTwo& m) {
  const bool ww = sgn(m.a + m.b) == 0;
  const bool wb = sgn(m.c + m.d) == 0;
  const bool bb = sgn(m.e + m.f) == 0;
  if (ww && wb && bb) throw std::invalid_argument("replacement matrix must have a positive entry");
  if (wb && bb) return 1;
  if (ww && wb) return 2;
  if (ww && bb) return 3;
  if (ww) return 4;
  if (bb) return 5;
  if (wb) return 6;
  return 0;
}

RatPoly g_hat_case4(const ReplacementMatrixTwo& m) {
  return RatPoly({2 * m.e, 2 * m.c - 4 * m.e - m.f, -2 * m.c - m.d + 2 * m.e + m.f});
}

Rational g_hat_case6(const ReplacementMatrixTwo& m, const Rational& x) {
  const Rational alpha_hat = m.e + m.f - m.a - m.b;
  const Rational denom = x * x + (1 - x) * (1 - x);
  return alpha_hat * x * x * x / denom + (m.a - m.e) * x * x / denom - (m.e + m.f) * x + m.e;
}

Rational case4_to_hat(const Rational& x) { return 2 * x / (x + 1); }
Rational case4_from_hat(const Rational& y) { return y / (2 - y); }

std::pair<Rational, Rational> case4_transform(const UrnState& state) {
  Rational t_hat = state.black + 2 * state.white - 1;
  if (sgn(t_hat) <= 0) throw std::invalid_argument("case4_transform: B + 2W - 1 must be positive");
  Rational z_hat = 2 * state.white / t_hat;
  return {std::move(t_hat), std::move(z_hat)};
}

DegenerateReduction degenerate_reduce(const ReplacementMatrixTwo& m) {
  m.validate();
  DegenerateReduction out;
  out.case_id = degenerate_case(m);
  switch (out.case_id) {
    case 0:
      throw std::invalid_argument("degenerate_reduce: every row sum is positive");
    case 1:
      out.limit = m.a / (m.a + m.b);
      break;
    case 2:
      out.limit = m.e / (m.e + m.f);
      break;
    case 3:
      out.limit = m.c / (m.c + m.d);
      break;
    case 4: {
      out.g_hat = g_hat_case4(m);
      check_case4_identity(m, *out.g_hat);
      out.error_pullback = case4_error_pullback(m);
      break;
    }
    case 5: {
      const ReplacementMatrixTwo swapped = m.color_swapped();
      out.g_hat = g_hat_case4(swapped);
      check_case4_identity(swapped, *out.g_hat);
      out.error_pullback = compose(case4_error_pullback(swapped), kOneMinusX);
      break;
    }
    case 6: {
      const Rational alpha_hat = m.e + m.f - m.a - m.b;
      const RatPoly denom = kX * kX + kOneMinusX * kOneMinusX;
      out.g_hat_numerator = RatPoly({Rational(0), Rational(0), m.a - m.e, alpha_hat}) +
                            linear(-(m.e + m.f), m.e) * denom;
      const RatPoly g = drift_two(m);
      for (const Rational& x : identity_sample_points()) {
        if (denom(x) * g_hat_case6(m, x) != g(x)) {
          throw std::logic_error("time-changed drift identity failed for degenerate case 6");
        }
      }
      const RatPoly weight = linear(alpha_hat, m.a - m.e);
      out.error_pullback = weight * weight * kXOneMinusX * kXOneMinusX;
      break;
    }
    default:
      break;
  }
  return out;
}

// --- both models ----------------------------------------------------------

RatPoly drift(const UrnModel& model) {
  if (const auto* one = std::get_if<OneDrawModel>(&model)) return drift_one(one->matrix);
  return drift_two(std::get<TwoDrawModel>(model).matrix);
}

ConditionalMoments cond_moments_oracle(const UrnState& state, const UrnModel& model) {
  const StepDistribution dist = step_distribution(state, model);
  const Rational total = state.total();
  const Rational z = state.white / total;
  const Rational f_z = drift(model)(z);
  ConditionalMoments out;
  for (const auto& o : dist) {
    const Rational next_total = total + o.d_total;
    const Rational dz = (state.white + o.d_white) / next_total - z;
    const Rational y = dz * next_total;
    const Rational u = y - f_z;
    out.mean_dz += o.probability * dz;
    out.mean_y += o.probability * y;
    out.mean_u += o.probability * u;
    out.mean_u2 += o.probability * u * u;
    out.mean_u_over_t += o.probability * u / next_total;
  }
  return out;
}

ModelMeta model_meta(const UrnModel& model) {
  validate(model);
  ModelMeta meta;
  if (const auto* one = std::get_if<OneDrawModel>(&model)) {
    const auto& m = one->matrix;
    meta.kind = ModelKind::OneDraw;
    meta.t_min = min(m.a + m.b, m.c + m.d);
    meta.t_max = max(m.a + m.b, m.c + m.d);
    if (sgn(meta.t_min) > 0) {
      const Rational c1 = m.a - m.c;
      const Rational c2 = 2 * m.c + m.d - 2 * m.a - m.b;
      const Rational c3 = m.a + m.b - m.c - m.d;
      meta.K_e = positive_or_one(abs(Rational(m.c + m.d - m.a - m.b)) * (abs(c1) + abs(c2) + abs(c3)));
      meta.attainable = Interval{Rational(0), Rational(1)};
    } else {
      meta.degenerate_case = sgn(m.c + m.d) == 0 ? 1 : 2;
      const Rational limit = drift_one_degenerate(m);
      meta.attainable = Interval{limit, limit};
    }
    meta.white_diverges = sgn(m.a) > 0 || sgn(m.c) > 0;
    meta.black_diverges = sgn(m.b) > 0 || sgn(m.d) > 0;
    if (m.a == m.d && sgn(m.b) == 0 && sgn(m.c) == 0) meta.flat_family = FlatFamily::ClassicalPolya;
    return meta;
  }

  const auto& two = std::get<TwoDrawModel>(model);
  const auto& m = two.matrix;
  meta.kind = two.sampling == Sampling::WithReplacement ? ModelKind::TwoDrawWithReplacement
                                                        : ModelKind::TwoDrawWithoutReplacement;
  const std::array<Rational, 3> sums{m.a + m.b, m.c + m.d, m.e + m.f};
  const std::array<Rational, 3> whites{m.a, m.c, m.e};
  meta.t_min = min(sums[0], min(sums[1], sums[2]));
  meta.t_max = max(sums[0], max(sums[1], sums[2]));
  meta.degenerate_case = degenerate_case(m);
  if (meta.degenerate_case == 0) {
    // sum_j C_k^(j) = 0 turns each column into sum_j C_k^(j) [1/(T+s_j) - 1/T],
    // bounded by sum_j |C_k^(j)| s_j / T^2; the remainders add |R_j| / T <=
    // S_j / (2 T^2) for T >= 2.
    const Table1 table = table1_polys(m);
    Rational bound = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      Rational column = 0;
      for (const auto& ck : table[j]) column += abs(ck);
      bound += sums[j] * column;
    }
    if (two.sampling == Sampling::WithoutReplacement) {
      for (const auto& r : table1_remainders(m)) bound += abs_sum(r) / 2;
    }
    meta.K_e = positive_or_one(bound);
    meta.attainable = attainable_interval(m);
  } else {
    std::optional<Interval> span;
    for (std::size_t j = 0; j < 3; ++j) {
      if (sgn(sums[j]) == 0) continue;
      const Rational ratio = whites[j] / sums[j];
      span = span ? Interval{min(span->lo, ratio), max(span->hi, ratio)} : Interval{ratio, ratio};
    }
    meta.attainable = span;
  }
  meta.white_diverges = sgn(m.c) > 0 || sgn(m.e) > 0 ||
                        (sgn(m.a) > 0 && sgn(m.c) == 0 && sgn(m.e) == 0 && sgn(m.f) == 0);
  meta.black_diverges = sgn(m.d) > 0 || sgn(m.b) > 0 ||
                        (sgn(m.f) > 0 && sgn(m.d) == 0 && sgn(m.b) == 0 && sgn(m.a) == 0);
  if (m.a == 2 * m.d && m.f == 2 * m.c && sgn(m.b) == 0 && sgn(m.e) == 0) {
    meta.flat_family = FlatFamily::TwoDrawPolya;
  }
  return meta;
}

std::optional<SAConditions> sa_conditions(const UrnModel& model) {
  const ModelMeta meta = model_meta(model);
  if (sgn(meta.t_min) <= 0) return std::nullopt;
  const UrnState start = initial_state(model);
  const Rational t0 = start.total();
  const Rational K_f = positive_or_one(abs_sum(drift(model)));
  const Rational max_entry = std::visit(
      [](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, OneDrawModel>) {
          const auto& r = m.matrix;
          return max(max(r.a, r.b), max(r.c, r.d));
        } else {
          const auto& r = m.matrix;
          return max(max(max(r.a, r.b), max(r.c, r.d)), max(r.e, r.f));
        }
      },
      model);
  // |Y| = |dW - Z dT| <= max(dW, dB) <= max entry; |U| <= |Y| + |f|.
  return make_sa_conditions(1 / (t0 + meta.t_max), 1 / meta.t_min, max_entry + K_f, K_f, meta.K_e);
}

}  // namespace polya

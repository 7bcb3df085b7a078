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


#include "polya/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace polya {
namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

std::string_view location_name(RootLocation where) {
  switch (where) {
    case RootLocation::Interior: return "interior";
    case RootLocation::LeftBoundary: return "left-boundary";
    case RootLocation::RightBoundary: return "right-boundary";
  }
  return "interior";
}

RootLocation location_from_name(std::string_view name) {
  if (name == "interior") return RootLocation::Interior;
  if (name == "left-boundary") return RootLocation::LeftBoundary;
  if (name == "right-boundary") return RootLocation::RightBoundary;
  bad("unknown root location '" + std::string(name) + "'");
}

Json citations_to_json(const std::vector<Theorem>& citations) {
  Json out = Json::array();
  for (Theorem t : citations) out.push_back(std::string(to_string(t)));
  return out;
}

std::vector<Theorem> citations_from_json(const Json& j) {
  std::vector<Theorem> out;
  if (j.is_null()) return out;
  for (const auto& t : j) out.push_back(theorem_from_string(t.get<std::string>()));
  return out;
}

RatPoly poly_from_json(const Json& j) {
  std::vector<Rational> coeffs;
  for (const auto& c : j) coeffs.push_back(rational_from_json(c));
  return RatPoly(std::move(coeffs));
}

Json interval_to_json(const Interval& iv) {
  return Json{{"L", rational_to_json(iv.lo)}, {"U", rational_to_json(iv.hi)}};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<std::uint64_t>())))
                                  : Rational(Integer(std::to_string(j.get<std::int64_t>())));
  }
  bad("rational must be a \"p/q\" string or an integer, got " + j.dump());
}

Json poly_to_json(const RatPoly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(rational_to_json(c));
  return out;
}

UrnModel model_from_json(const Json& j) {
  if (!j.is_object()) bad("model must be a JSON object");
  const std::string kind = field(j, "model").get<std::string>();
  const Json& rows = field(j, "matrix");
  std::vector<Rational> entries;
  if (!rows.is_array()) bad("matrix must be an array of rows");
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 2) bad("each matrix row must have two entries");
    for (const auto& v : row) entries.push_back(rational_from_json(v));
  }
  UrnModel model;
  if (kind == "one-draw") {
    if (entries.size() != 4) bad("one-draw matrix must have two rows");
    OneDrawModel m{{entries[0], entries[1], entries[2], entries[3]}};
    if (j.contains("w0")) m.w0 = rational_from_json(j.at("w0"));
    if (j.contains("b0")) m.b0 = rational_from_json(j.at("b0"));
    if (j.contains("sampling")) bad("sampling applies to two-draw models only");
    model = m;
  } else if (kind == "two-draw") {
    if (entries.size() != 6) bad("two-draw matrix must have three rows");
    TwoDrawModel m{{entries[0], entries[1], entries[2], entries[3], entries[4], entries[5]}};
    if (j.contains("w0")) m.w0 = rational_from_json(j.at("w0"));
    if (j.contains("b0")) m.b0 = rational_from_json(j.at("b0"));
    if (j.contains("sampling")) {
      const std::string s = j.at("sampling").get<std::string>();
      if (s == "with") {
        m.sampling = Sampling::WithReplacement;
      } else if (s == "without") {
        m.sampling = Sampling::WithoutReplacement;
      } else {
        bad("sampling must be \"with\" or \"without\"");
      }
    }
    model = m;
  } else {
    bad("model must be \"one-draw\" or \"two-draw\"");
  }
  validate(model);
  return model;
}

Json model_to_json(const UrnModel& model) {
  auto r = rational_to_json;
  if (const auto* one = std::get_if<OneDrawModel>(&model)) {
    const auto& m = one->matrix;
    return Json{{"model", "one-draw"},
                {"matrix", Json::array({Json::array({r(m.a), r(m.b)}), Json::array({r(m.c), r(m.d)})})},
                {"w0", r(one->w0)},
                {"b0", r(one->b0)}};
  }
  const auto& two = std::get<TwoDrawModel>(model);
  const auto& m = two.matrix;
  return Json{{"model", "two-draw"},
              {"matrix", Json::array({Json::array({r(m.a), r(m.b)}), Json::array({r(m.c), r(m.d)}),
                                      Json::array({r(m.e), r(m.f)})})},
              {"w0", r(two.w0)},
              {"b0", r(two.b0)},
              {"sampling", two.sampling == Sampling::WithReplacement ? "with" : "without"}};
}

UrnModel read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

Json root_to_json(const RootRecord& root) {
  Json out;
  out["value"] = root.exact ? rational_to_json(*root.exact) : Json(nullptr);
  out["approx"] = root.approx;
  out["bracket"] = Json::array({rational_to_json(root.bracket.lo), rational_to_json(root.bracket.hi)});
  out["multiplicity"] = root.multiplicity;
  out["location"] = std::string(location_name(root.location));
  out["defining"] = poly_to_json(root.defining);
  return out;
}

RootRecord root_from_json(const Json& j) {
  const int multiplicity = j.contains("multiplicity") ? j.at("multiplicity").get<int>() : 1;
  if (j.contains("value") && !j.at("value").is_null()) {
    return rational_point(rational_from_json(j.at("value")), multiplicity);
  }
  RootRecord root;
  const Json& bracket = field(j, "bracket");
  if (!bracket.is_array() || bracket.size() != 2) bad("bracket must be a pair");
  root.bracket = {rational_from_json(bracket[0]), rational_from_json(bracket[1])};
  root.approx = field(j, "approx").get<double>();
  root.multiplicity = multiplicity;
  root.location = j.contains("location") ? location_from_name(j.at("location").get<std::string>())
                                         : RootLocation::Interior;
  if (j.contains("defining")) root.defining = poly_from_json(j.at("defining"));
  return root;
}

Json prediction_to_json(const LimitPrediction& prediction) {
  Json out;
  out["kind"] = std::string(to_string(prediction.kind));
  out["citations"] = citations_to_json(prediction.citations);
  if (prediction.beta_params) {
    out["beta"] = Json{{"alpha", rational_to_json(prediction.beta_params->first)},
                       {"beta", rational_to_json(prediction.beta_params->second)}};
  }
  Json points = Json::array();
  for (const auto& p : prediction.certain_points) {
    Json e = root_to_json(p.point);
    e["class"] = std::string(to_string(p.cls));
    e["verdict"] = std::string(to_string(p.verdict));
    e["citations"] = citations_to_json(p.citations);
    points.push_back(std::move(e));
  }
  out["points"] = std::move(points);
  Json excluded = Json::array();
  for (const auto& p : prediction.excluded_points) {
    Json e = root_to_json(p.point);
    e["class"] = std::string(to_string(p.cls));
    e["reason"] = std::string(to_string(p.reason));
    excluded.push_back(std::move(e));
  }
  out["excluded"] = std::move(excluded);
  return out;
}

LimitPrediction prediction_from_json(const Json& j) {
  LimitPrediction out;
  out.kind = limit_kind_from_string(field(j, "kind").get<std::string>());
  if (j.contains("citations")) out.citations = citations_from_json(j.at("citations"));
  if (j.contains("beta")) {
    out.beta_params = std::make_pair(rational_from_json(field(j.at("beta"), "alpha")),
                                     rational_from_json(field(j.at("beta"), "beta")));
  }
  if (j.contains("points")) {
    for (const auto& e : j.at("points")) {
      PointVerdict p;
      p.point = root_from_json(e);
      if (e.contains("class")) p.cls = equilibrium_class_from_string(e.at("class").get<std::string>());
      if (e.contains("verdict")) p.verdict = verdict_from_string(e.at("verdict").get<std::string>());
      if (e.contains("citations")) p.citations = citations_from_json(e.at("citations"));
      out.certain_points.push_back(std::move(p));
    }
  }
  if (j.contains("excluded")) {
    for (const auto& e : j.at("excluded")) {
      ExcludedPoint p;
      p.point = root_from_json(e);
      if (e.contains("class")) p.cls = equilibrium_class_from_string(e.at("class").get<std::string>());
      if (e.contains("reason")) p.reason = theorem_from_string(e.at("reason").get<std::string>());
      out.excluded_points.push_back(std::move(p));
    }
  }
  return out;
}

Json analysis_to_json(const Analysis& a) {
  Json out;
  out["model"] = model_to_json(a.model);
  out["kind"] = std::string(to_string(a.meta.kind));
  out["drift"] = poly_to_json(a.drift);
  out["psi"] = poly_to_json(a.psi);
  out["error"] = poly_to_json(a.error_fn);
  if (a.two_draw_error) {
    out["error_forms"] = Json{{"A", poly_to_json(a.two_draw_error->A)},
                              {"B", poly_to_json(a.two_draw_error->B)},
                              {"C", poly_to_json(a.two_draw_error->C)}};
  }
  out["t_min"] = rational_to_json(a.meta.t_min);
  out["t_max"] = rational_to_json(a.meta.t_max);
  if (a.meta.attainable) out["attainable"] = interval_to_json(*a.meta.attainable);
  if (a.conditions) {
    const auto& c = *a.conditions;
    out["sa_conditions"] = Json{{"c_l", rational_to_json(c.c_l)},   {"c_u", rational_to_json(c.c_u)},
                                {"K_u", rational_to_json(c.K_u)},   {"K_f", rational_to_json(c.K_f)},
                                {"K_e", rational_to_json(c.K_e)},   {"K_delta", rational_to_json(c.K_delta)}};
  }
  if (a.meta.degenerate_case != 0) {
    Json d;
    d["case"] = a.meta.degenerate_case;
    if (a.degenerate_limit) d["limit"] = rational_to_json(*a.degenerate_limit);
    if (a.reduction) {
      if (a.reduction->g_hat) d["g_hat"] = poly_to_json(*a.reduction->g_hat);
      if (a.reduction->g_hat_numerator) d["g_hat_numerator"] = poly_to_json(*a.reduction->g_hat_numerator);
    }
    out["degenerate"] = std::move(d);
  }
  Json equilibria = Json::array();
  for (const auto& eq : a.equilibria) {
    Json e = root_to_json(eq.root);
    e["class"] = std::string(to_string(eq.cls));
    e["derivative"] = eq.derivative_at_root ? rational_to_json(*eq.derivative_at_root) : Json(nullptr);
    e["derivative_sign"] = eq.derivative_sign;
    equilibria.push_back(std::move(e));
  }
  out["equilibria"] = std::move(equilibria);
  out["prediction"] = prediction_to_json(a.prediction);
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json out;
  out["verdict"] = std::string(to_string(r.verdict));
  out["reasons"] = r.reasons;
  out["prediction"] = prediction_to_json(r.prediction);
  out["replicates"] = r.replicates;
  out["n_steps"] = r.n_steps;
  out["base_seed"] = r.base_seed;
  out["conventions"] = Json{{"radius", r.options.radius},
                            {"min_assigned_fraction", r.options.min_assigned_fraction},
                            {"max_excluded_fraction", r.options.max_excluded_fraction},
                            {"ks_level", r.options.ks_level},
                            {"histogram_bins", r.options.histogram_bins}};
  Json clusters = Json::array();
  for (std::size_t i = 0; i < r.allowed_counts.size(); ++i) {
    clusters.push_back(Json{{"point", r.allowed_points[i]}, {"role", "allowed"}, {"count", r.allowed_counts[i]}});
  }
  for (std::size_t i = 0; i < r.excluded_counts.size(); ++i) {
    clusters.push_back(Json{{"point", r.excluded_points[i]}, {"role", "excluded"}, {"count", r.excluded_counts[i]}});
  }
  out["cluster_counts"] = std::move(clusters);
  out["unassigned_count"] = r.unassigned_count;
  out["ks_statistic"] = r.ks_statistic ? Json(*r.ks_statistic) : Json(nullptr);
  out["ks_threshold"] = r.ks_threshold ? Json(*r.ks_threshold) : Json(nullptr);
  out["max_bin_mass"] = r.max_bin_mass ? Json(*r.max_bin_mass) : Json(nullptr);
  out["histogram"] = r.histogram;
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, end);
}

void write_replicates_csv(std::ostream& out, std::span<const ReplicateResult> results) {
  out << "replicate,final_W,final_B,final_Z\n";
  for (const auto& r : results) {
    out << r.replicate_index << ',' << format_double(r.final_W) << ',' << format_double(r.final_B) << ','
        << format_double(r.final_Z) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, std::span<const ReplicateResult> results) {
  out << "replicate,step,Z\n";
  for (const auto& r : results) {
    for (const auto& [n, z] : r.trajectory) out << r.replicate_index << ',' << n << ',' << format_double(z) << '\n';
  }
}

std::string histogram_text(std::span<const std::size_t> counts) {
  std::size_t peak = 1;
  for (auto c : counts) peak = std::max(peak, c);
  std::ostringstream out;
  const double width = 1.0 / static_cast<double>(counts.size());
  char line[64];
  for (std::size_t i = 0; i < counts.size(); ++i) {
    std::snprintf(line, sizeof line, "[%.2f, %.2f) %6zu ", i * width, (i + 1) * width, counts[i]);
    out << line << std::string(counts[i] * 40 / peak, '#') << '\n';
  }
  return out.str();
}

}  // namespace polya

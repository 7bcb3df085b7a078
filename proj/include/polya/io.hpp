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


#ifndef POLYA_IO_HPP
#define POLYA_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polya/analysis.hpp"
#include "polya/montecarlo.hpp"

namespace polya {

using Json = nlohmann::ordered_json;

/// Comma-separated rationals, e.g. "15,3,4,1,3,21" or "1/2, 2".
std::vector<Rational> parse_rational_list(std::string_view text);

/// {"model": "one-draw"|"two-draw", "matrix": [[a,b],[c,d](,[e,f])],
///  "w0": r, "b0": r, "sampling": "with"|"without"}; rationals are "p/q"
/// strings or integers. Throws std::invalid_argument on malformed input.
UrnModel model_from_json(const Json& j);
Json model_to_json(const UrnModel& model);
UrnModel read_model_file(const std::filesystem::path& path);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json poly_to_json(const RatPoly& p);

Json root_to_json(const RootRecord& root);
RootRecord root_from_json(const Json& j);

Json prediction_to_json(const LimitPrediction& prediction);
LimitPrediction prediction_from_json(const Json& j);

Json analysis_to_json(const Analysis& analysis);
Json report_to_json(const VerificationReport& report);

void write_replicates_csv(std::ostream& out, std::span<const ReplicateResult> results);
void write_trajectory_csv(std::ostream& out, std::span<const ReplicateResult> results);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// One line per bin: "[lo, hi) count bar".
std::string histogram_text(std::span<const std::size_t> counts);

}  // namespace polya

#endif  // POLYA_IO_HPP

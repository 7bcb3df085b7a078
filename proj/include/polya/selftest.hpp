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


#ifndef POLYA_SELFTEST_HPP
#define POLYA_SELFTEST_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "polya/urns.hpp"

namespace polya {

/// Random nonnegative rational p/q with p in [0, max_num], q in [1, max_den].
Rational random_rational(std::mt19937_64& rng, int max_num = 12, int max_den = 6);
/// Strictly positive variant.
Rational random_positive_rational(std::mt19937_64& rng, int max_num = 12, int max_den = 6);

/// Random matrices with every row sum positive.
ReplacementMatrixOne random_matrix_one(std::mt19937_64& rng);
ReplacementMatrixTwo random_matrix_two(std::mt19937_64& rng);

/// Random two-draw matrix in degenerate family 4, 5 or 6 (other rows positive).
ReplacementMatrixTwo random_degenerate_two(std::mt19937_64& rng, int case_id);

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && cases > 0; }
};

struct SelftestOptions {
  std::uint64_t seed = 0x5e1f7e57;
  std::size_t matrices = 200;
  std::size_t points_per_matrix = 20;
  std::size_t oracle_pairs = 500;
  /// Source of the coefficient table under test.
  std::function<Table1(const ReplacementMatrixTwo&)> table1 = table1_polys;
};

/// Exact identity suites over random rational matrices.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options = {});

/// Coefficient table with one entry perturbed, for negative-path checks.
Table1 mutated_table1(const ReplacementMatrixTwo& m);

}  // namespace polya

#endif  // POLYA_SELFTEST_HPP

// Copyright 2026 The squaresort Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQUARESORT_BENCH_DISTRIBUTIONS_HPP_
#define SQUARESORT_BENCH_DISTRIBUTIONS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "squaresort/types.hpp"

namespace squaresort::bench {

enum class Distribution {
  kPermutation,  // uniform random permutation of {1..n}
  kBinary,       // i.i.d. values in {0, 1}
  kUniformFull,  // i.i.d. uniform over {1..n}
  kUniformSqrt,  // i.i.d. uniform over {1..floor(sqrt n)}
};

inline constexpr std::array<Distribution, 4> kAllDistributions = {
    Distribution::kPermutation, Distribution::kBinary,
    Distribution::kUniformFull, Distribution::kUniformSqrt};

std::string_view to_string(Distribution d);

/// Accepts the names produced by to_string; throws std::invalid_argument.
Distribution parse_distribution(std::string_view name);

/// Deterministic in (dist, n, seed).
std::vector<Item> generate_input(Distribution dist, std::size_t n,
                                 std::uint64_t seed);

}  // namespace squaresort::bench

#endif  // SQUARESORT_BENCH_DISTRIBUTIONS_HPP_

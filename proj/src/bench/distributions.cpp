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

#include "squaresort/bench/distributions.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace squaresort::bench {

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::kPermutation: return "permutation";
    case Distribution::kBinary: return "binary";
    case Distribution::kUniformFull: return "uniform-full";
    case Distribution::kUniformSqrt: return "uniform-sqrt";
  }
  return "?";
}

Distribution parse_distribution(std::string_view name) {
  for (Distribution d : kAllDistributions)
    if (to_string(d) == name) return d;
  throw std::invalid_argument("unknown distribution '" + std::string(name) +
                              "' (expected permutation, binary, uniform-full "
                              "or uniform-sqrt)");
}

std::vector<Item> generate_input(Distribution dist, std::size_t n,
                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Item> out(n);
  switch (dist) {
    case Distribution::kPermutation:
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Item>(i + 1);
      // Fisher-Yates with our own bounded draws; std::shuffle is not
      // reproducible across standard libraries.
      for (std::size_t i = n; i > 1; --i)
        std::swap(out[i - 1], out[rng.below(i)]);
      break;
    case Distribution::kBinary:
      for (auto& x : out) x = static_cast<Item>(rng.next() >> 63);
      break;
    case Distribution::kUniformFull:
      for (auto& x : out) x = static_cast<Item>(rng.below(n) + 1);
      break;
    case Distribution::kUniformSqrt: {
      std::size_t r = ceil_sqrt(n);
      if (r * r > n) --r;
      for (auto& x : out) x = static_cast<Item>(rng.below(r) + 1);
      break;
    }
  }
  return out;
}

}  // namespace squaresort::bench

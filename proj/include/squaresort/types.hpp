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

#ifndef SQUARESORT_TYPES_HPP_
#define SQUARESORT_TYPES_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <type_traits>

namespace squaresort {

/// Every memory cell holds one 64-bit word: an item, an index or a cursor.
using Item = std::int64_t;

inline constexpr Item kItemMax = std::numeric_limits<Item>::max();

/// Tuning knobs of the sort. Defaults are the textbook values; the
/// experiments in the harness typically run with cutoff 1000 and
/// naive_threshold 10.
struct SortParams {
  /// Inputs of at most this many items are sorted directly.
  std::size_t cutoff = 16;
  /// Skew transposition falls back to the naive double loop when either
  /// the column count or the bucket count drops below this.
  std::size_t naive_threshold = 4;
  /// Pivot sampling rounds before accepting a degenerate pivot set.
  std::size_t resample_cap = 32;

  void validate() const {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
    if (naive_threshold < 2)
      throw std::invalid_argument("naive_threshold must be >= 2");
    if (resample_cap < 1)
      throw std::invalid_argument("resample_cap must be >= 1");
  }
};

/// splitmix64 finalizer; used to derive independent per-trial seeds from a
/// master seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  return mix_seed(master ^ mix_seed(index + 1));
}

/// Deterministic 64-bit generator. The engine is fully specified by the
/// standard, and bounded draws are done here rather than through
/// std::uniform_int_distribution so streams match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform draw from [0, bound) by multiply-shift with rejection of the
  /// biased low products. bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m =
        static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// Smallest m with m * m >= n.
constexpr std::size_t ceil_sqrt(std::size_t n) {
  if (n < 2) return n;
  if (!std::is_constant_evaluated() && n < (std::size_t{1} << 52)) {
    // Exact for these n after the one-step corrections.
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r < n) ++r;
    while ((r - 1) * (r - 1) >= n) --r;
    return r;
  }
  std::size_t lo = 1, hi = std::size_t{1} << 32;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (mid * mid >= n) hi = mid; else lo = mid + 1;
  }
  return lo;
}

}  // namespace squaresort

#endif  // SQUARESORT_TYPES_HPP_

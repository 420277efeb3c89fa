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

// Timed runs on the native backend and block-transfer runs on the simulator.
// Every run checks its output against the reference oracle before a record
// is produced; a failed check throws TrialError.

#ifndef SQUARESORT_BENCH_TRIALS_HPP_
#define SQUARESORT_BENCH_TRIALS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "squaresort/bench/distributions.hpp"
#include "squaresort/sim_memory.hpp"
#include "squaresort/types.hpp"

namespace squaresort::bench {

enum class Algorithm {
  kSquareSort,
  kMergeSort,    // in-repo top-down binary merge sort
  kLibrarySort,  // std::sort, native backend only
};

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

class TrialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BenchRecord {
  Algorithm algo = Algorithm::kSquareSort;
  Distribution dist = Distribution::kPermutation;
  std::size_t cutoff = 0;  // SquareSort cutoff used, 0 for other algorithms
  std::size_t size = 0;
  double time_ns = 0;    // mean over repeats
  double median_ns = 0;  // median over repeats
  double norm = 0;       // time_ns / (size * log2 size)
};

/// time_ns / (n log2 n). n must be >= 2.
double normalized_time(double time_ns, std::size_t n);

/// Runs `repeats` instances (seeds derived from `seed`) and averages the
/// wall-clock time of the sort call alone.
BenchRecord run_time_trial(Algorithm algo, Distribution dist, std::size_t n,
                           std::uint64_t seed, const SortParams& params,
                           std::size_t repeats);

enum class IoScope { kFullSort, kTransposeOnly };

std::string_view to_string(IoScope s);
IoScope parse_scope(std::string_view name);

struct IoRecord {
  std::size_t size = 0;
  std::size_t block = 0;  // B
  std::size_t cache = 0;  // M
  std::uint64_t io_total = 0;
  double ratio = 0;
  std::uint64_t seed = 0;
};

/// io / ((n/B) * max(1, log_{M/B} n)). With M == B the log base degenerates
/// and the log factor is taken as 1.
double io_ratio(std::uint64_t io, std::size_t n, std::size_t block,
                std::size_t cache);

struct IoTrialOptions {
  IoScope scope = IoScope::kFullSort;
  Algorithm algo = Algorithm::kSquareSort;
  Distribution dist = Distribution::kPermutation;
  bool allow_non_tall = false;
};

/// Measures one run on a fresh simulator. The cache starts cold and the
/// counter covers only the measured operation; the final flush of dirty
/// blocks is included.
IoRecord run_io_trial(std::size_t n, const extmem::CacheConfig& config,
                      std::uint64_t seed, const SortParams& params,
                      const IoTrialOptions& options = {});

/// Maps a block size to a cache size.
struct CacheRule {
  enum class Kind { kSquare, kTallFactor, kFixed } kind = Kind::kSquare;
  std::size_t value = 1;

  std::size_t cache_for(std::size_t block) const;
  /// "square" (M = B^2), "tall:K" (M = K B^2) or "fixed:M".
  static CacheRule parse(std::string_view text);
};

struct IoSweepConfig {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> blocks;
  CacheRule rule;
  std::vector<std::uint64_t> seeds;
  SortParams params;
  IoTrialOptions options;
  std::size_t jobs = 1;
};

struct IoSweepResult {
  std::vector<IoRecord> records;    // ordered by (B, n, seed)
  std::vector<std::string> errors;  // one entry per failed cell
};

/// Cartesian sweep. A failing cell is reported in `errors` and the sweep
/// continues. Cells run on up to `jobs` threads; results do not depend on
/// the thread count.
IoSweepResult io_scaling_sweep(const IoSweepConfig& config);

struct CutoffSweepConfig {
  std::vector<std::size_t> cutoffs = {100, 256, 493, 958};
  Distribution dist = Distribution::kPermutation;
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> seeds = {1};
  std::size_t repeats = 1;
  SortParams params;  // cutoff is overridden per cell
};

/// One SquareSort record per (cutoff, size), averaging over seeds x repeats.
std::vector<BenchRecord> cutoff_sweep(const CutoffSweepConfig& config);

/// Averages run_time_trial over several seeds into one record per size.
BenchRecord run_time_trials(Algorithm algo, Distribution dist, std::size_t n,
                            const std::vector<std::uint64_t>& seeds,
                            const SortParams& params, std::size_t repeats);

}  // namespace squaresort::bench

#endif  // SQUARESORT_BENCH_TRIALS_HPP_

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

// Statistical checks on the bucket sizes produced by random pivots, and the
// fitting of measured block-transfer counts. Every check compares an
// empirical value against its bound plus three standard errors.

#ifndef SQUARESORT_VERIFY_STATS_HPP_
#define SQUARESORT_VERIFY_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "squaresort/bench/trials.hpp"

namespace squaresort::verify {

inline constexpr double kSlackSigmas = 3.0;
inline constexpr double kDefaultTs[] = {1, 2, 3};
inline constexpr double kDefaultSs[] = {2, 5};

struct TailCheck {
  double parameter = 0;  // t for upper tails, s for lower tails
  std::size_t hits = 0;
  double frequency = 0;
  double bound = 0;
  double sigma = 0;  // sqrt(p(1-p)/trials)
  bool pass = false;
};

struct TailReport {
  std::size_t n = 0;
  std::size_t trials = 0;   // completed trials
  std::size_t aborted = 0;  // trials with a degenerate pivot set
  std::vector<TailCheck> upper;  // Pr[n_1 >= t sqrt n] <= exp(-0.9t + 0.1)
  std::vector<TailCheck> lower;  // Pr[n_1 <= s] <= e^2 s / sqrt n
  // Sum over buckets of n_i log2 n_i, against n log2(n)/2 + 4 e n.
  double entropy_mean = 0;
  double entropy_stderr = 0;
  double entropy_bound = 0;
  bool entropy_pass = false;
  double mean_rounds = 0;

  bool all_pass() const;
};

double upper_tail_bound(double t);
double lower_tail_bound(double s, std::size_t n);
double entropy_bound(std::size_t n);

/// Draws one pivot set per trial over n distinct items (n >= 100,
/// trials >= 1000) and tallies the size n_1 of the first bucket and the
/// entropy statistic over all buckets.
TailReport bucket_tail_stats(std::size_t n, std::size_t trials,
                             std::uint64_t seed,
                             std::span<const double> ts = kDefaultTs,
                             std::span<const double> ss = kDefaultSs);

struct RoundsReport {
  std::size_t runs = 0;
  double mean_rounds = 0;
  std::size_t max_rounds = 0;
  std::size_t degenerate = 0;
  double bound = 0;  // e^2
  bool pass() const { return runs > 0 && mean_rounds <= bound; }
};

/// Sampling rounds needed by sample_pivots on random permutations of size n
/// whose columns have been sorted.
RoundsReport pivot_round_stats(std::size_t n, std::size_t runs,
                               std::uint64_t seed);

struct IoFit {
  std::size_t block = 0;
  std::size_t cache = 0;
  std::size_t distinct_sizes = 0;
  double ratio_min = 0;
  double ratio_max = 0;
  double ratio_mean = 0;
  bool enough_sizes = false;  // at least three distinct n
  std::string note;

  double spread() const { return ratio_max / ratio_min; }
};

/// Group-wise extrema and mean of the ratio column, one entry per (B, M) in
/// order of first appearance.
std::vector<IoFit> fit_io_constant(std::span<const bench::IoRecord> records);

/// Same grouping applied to an arbitrary per-record value.
std::vector<IoFit> fit_io_values(std::span<const bench::IoRecord> records,
                                 double (*value)(const bench::IoRecord&));

}  // namespace squaresort::verify

#endif  // SQUARESORT_VERIFY_STATS_HPP_

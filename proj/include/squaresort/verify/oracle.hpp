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

// Correctness oracles. The reference sort here is the standard library's;
// nothing in this file calls into the SquareSort code paths it checks,
// except the two transposes being compared with each other.

#ifndef SQUARESORT_VERIFY_ORACLE_HPP_
#define SQUARESORT_VERIFY_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "squaresort/bench/distributions.hpp"
#include "squaresort/transpose.hpp"
#include "squaresort/types.hpp"

namespace squaresort::verify {

struct CheckResult {
  bool ok = true;
  std::string reason;     // empty when ok
  std::size_t index = 0;  // first out-of-order position, if any
};

/// Passes iff output is non-decreasing and a permutation of input.
CheckResult check_sorted_permutation(std::span<const Item> input,
                                     std::span<const Item> output);

/// A self-contained transposition problem on plain vectors.
struct TransposeInstance {
  std::vector<Item> src;  // sorted columns
  std::vector<Item> col, col_end, pivots, buc;
  bool open_top = true;
};

struct TransposeOutcome {
  std::vector<Item> dst, col, buc;
  TransposeProbe probe;
};

/// Random sorted columns with a random non-decreasing pivot list; bucket
/// cursors are computed by direct counting.
TransposeInstance random_transpose_instance(Rng& rng, std::size_t max_n);

/// Bucket start positions by direct counting: starts[j] is the number of
/// items below pivots[j-1]. Independent of initial_bucket_cursors.
std::vector<Item> count_bucket_starts(std::span<const Item> items,
                                      std::span<const Item> pivots);

TransposeOutcome run_naive(const TransposeInstance& inst);
TransposeOutcome run_recursive(const TransposeInstance& inst,
                               std::size_t threshold);

struct TransposeReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t recursive_trials = 0;  // trials where the quadrant split ran
  std::size_t max_imbalance = 0;     // over trials with k == l
  std::vector<std::uint64_t> failing_seeds;
  std::vector<std::string> messages;

  bool ok() const { return failures == 0 && max_imbalance <= 1; }
};

/// Runs both transposes from identical states and compares destination
/// contents and final cursors bit for bit. Each trial is reproducible from
/// the seed it reports.
TransposeReport transpose_equivalence_test(std::size_t trials,
                                           std::size_t max_n,
                                           std::uint64_t seed);

struct CorrectnessReport {
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && runs > 0; }
};

/// instances runs of square_sort per (distribution, size).
CorrectnessReport correctness_suite(
    std::span<const bench::Distribution> dists,
    std::span<const std::size_t> sizes, std::size_t instances,
    std::uint64_t seed, const SortParams& params);

struct SpaceReport {
  std::size_t n = 0;
  std::size_t peak_cells = 0;
  double envelope = 10.0;  // allowed cells per item
  bool ok() const {
    return static_cast<double>(peak_cells) <= envelope * static_cast<double>(n);
  }
};

/// Peak auxiliary cells (everything but the input and output buffers)
/// allocated by one square_sort run on the native backend.
SpaceReport peak_auxiliary_space(std::size_t n, std::uint64_t seed,
                                 const SortParams& params,
                                 bench::Distribution dist =
                                     bench::Distribution::kPermutation);

}  // namespace squaresort::verify

#endif  // SQUARESORT_VERIFY_ORACLE_HPP_

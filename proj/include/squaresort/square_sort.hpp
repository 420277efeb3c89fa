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

// SquareSort: a randomized cache-oblivious distribution sort.
//
// The n input items are viewed as ceil(sqrt n) columns. Each column is sorted
// recursively from src into dst, ~sqrt(n) random pivots are drawn, dst is
// skew-transposed back into src so that every bucket is contiguous, and each
// bucket is sorted recursively from src into dst. Expected cost is
// O((n/B) log_{M/B} n) block transfers under a tall cache, without the
// algorithm knowing M or B.

#ifndef SQUARESORT_SQUARE_SORT_HPP_
#define SQUARESORT_SQUARE_SORT_HPP_

#include <cassert>
#include <algorithm>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "squaresort/layout.hpp"
#include "squaresort/memory.hpp"
#include "squaresort/pivots.hpp"
#include "squaresort/transpose.hpp"
#include "squaresort/types.hpp"

namespace squaresort {

/// Copies src[0, n) to dst and insertion-sorts it there.
template <CellMemory M>
void insertion_copy_sort(M& mem, typename M::Region src,
                         typename M::Region dst, std::size_t n) {
  if constexpr (std::is_same_v<M, NativeMemory>) {
    if (n <= detail::kBranchFreeSortMax) {
      detail::branch_free_insertion(src.data(), dst.data(), n);
      return;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Item x = mem.read(src, i);
    std::size_t j = i;
    while (j > 0) {
      const Item y = mem.read(dst, j - 1);
      if (!(x < y)) break;
      mem.write(dst, j, y);
      --j;
    }
    mem.write(dst, j, x);
  }
}

/// Optional counters filled by square_sort.
struct SortTrace {
  std::size_t levels = 0;            // calls above the cutoff
  std::size_t pivot_rounds = 0;      // summed over levels
  std::size_t degenerate_levels = 0;
  std::size_t single_value_copies = 0;
};

/// Sorts src[0, n) into dst[0, n). src is clobbered. The regions must not
/// overlap.
template <CellMemory M>
void square_sort(M& mem, typename M::Region src, typename M::Region dst,
                 std::size_t n, const SortParams& params, Rng& rng,
                 SortTrace* trace = nullptr) {
  using Region = typename M::Region;
  assert(src.size() >= n && dst.size() >= n);
  // n = 2 would split into one column of length 2, so it is always a base case.
  if (n <= params.cutoff || n <= 2) {
    insertion_copy_sort(mem, src, dst, n);
    return;
  }
  src = src.slice(0, n);
  dst = dst.slice(0, n);

  const std::size_t m = ceil_sqrt(n);
  // Separate allocations keep each cursor array block-aligned on the
  // simulator.
  const ScratchArray<M> col_cells(mem, m), col_end_cells(mem, m),
      pivot_cells(mem, m), buc_cells(mem, m);
  const Region col = col_cells, col_end = col_end_cells, pivots = pivot_cells,
               buc = buc_cells;
  write_column_layout(mem, n, col, col_end);

  for (std::size_t i = 0; i < m; ++i) {
    const auto lo = static_cast<std::size_t>(mem.read(col, i));
    const auto hi = static_cast<std::size_t>(mem.read(col_end, i));
    if (hi > lo)
      square_sort(mem, src.slice(lo, hi - lo), dst.slice(lo, hi - lo),
                  hi - lo, params, rng, trace);
  }

  const PivotSet ps =
      sample_pivots(mem, dst, col, col_end, pivots, rng, params);
  if (ps.degenerate) collapse_equal_pivot_runs(mem, pivots, ps.floor);
  if (trace) {
    ++trace->levels;
    trace->pivot_rounds += ps.rounds;
    trace->degenerate_levels += ps.degenerate ? 1 : 0;
  }

  initial_bucket_cursors(mem, dst, col, col_end, pivots, buc);
  const TransposeFrame<Region> frame{col, col_end, pivots, buc, true};
  skew_transpose(mem, dst, src, frame, params);

  // Cursor j now marks the end of bucket j.
  std::size_t lo = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const auto hi = static_cast<std::size_t>(mem.read(buc, j));
    assert(hi >= lo);
    if (hi > lo) {
      bool single = false;
      if (ps.degenerate) {
        const Item lower = j == 0 ? ps.floor : mem.read(pivots, j - 1);
        const Item upper = mem.read(pivots, j);
        single = single_value_bucket(lower, upper, j + 1 == m);
      }
      if (single) {
        copy_cells(mem, src.slice(lo, hi - lo), dst.slice(lo, hi - lo),
                   hi - lo);
        if (trace) ++trace->single_value_copies;
      } else {
        square_sort(mem, src.slice(lo, hi - lo), dst.slice(lo, hi - lo),
                    hi - lo, params, rng, trace);
      }
    }
    lo = hi;
  }
}

/// Sorts data in place on the native backend. Allocates one n-cell buffer.
inline void square_sort(std::span<Item> data, const SortParams& params,
                        Rng& rng) {
  std::vector<Item> scratch(data.begin(), data.end());
  NativeMemory mem;
  square_sort(mem, NativeMemory::view(scratch), NativeMemory::view(data),
              data.size(), params, rng);
}

}  // namespace squaresort

#endif  // SQUARESORT_SQUARE_SORT_HPP_

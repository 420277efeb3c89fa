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

// Pivot selection and bucket bookkeeping for one SquareSort level.
//
// A pivot array has k slots; slot k-1 is the +infinity sentinel. Its stored
// value is kItemMax but it is recognized by position, never by value, so
// items equal to kItemMax sort correctly.

#ifndef SQUARESORT_PIVOTS_HPP_
#define SQUARESORT_PIVOTS_HPP_

#include <cassert>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "squaresort/memory.hpp"
#include "squaresort/merge_sort.hpp"
#include "squaresort/types.hpp"

namespace squaresort {

struct PivotSet {
  std::size_t count = 0;  // slots including the sentinel
  std::size_t rounds = 0;
  // Set when the resample cap ran out; the last sorted sample is kept and
  // may contain duplicates or the minimum.
  bool degenerate = false;
  Item floor = 0;  // minimum of the sampled buffer, from the column heads
};

/// Draws count-1 pivots from dst (whose columns are sorted) into
/// pivots[0, count-1) and writes the sentinel. A round succeeds when the
/// sorted sample is strictly increasing and its smallest value exceeds
/// min(dst); failed rounds redraw the whole sample.
template <CellMemory M>
PivotSet sample_pivots(M& mem, typename M::Region dst, typename M::Region col,
                       typename M::Region col_end, typename M::Region pivots,
                       Rng& rng, const SortParams& params) {
  const std::size_t n = dst.size();
  const std::size_t k = pivots.size();
  if (n < 2) throw std::invalid_argument("sample_pivots needs n >= 2");
  assert(k >= 2);

  PivotSet result;
  result.count = k;

  bool have_floor = false;
  for (std::size_t i = 0; i < col.size(); ++i) {
    const auto c = static_cast<std::size_t>(mem.read(col, i));
    if (c >= static_cast<std::size_t>(mem.read(col_end, i))) continue;
    const Item head = mem.read(dst, c);
    if (!have_floor || head < result.floor) result.floor = head;
    have_floor = true;
  }

  const std::size_t draws = k - 1;
  const auto sample = pivots.slice(0, draws);
  ScratchArray<M> tmp(mem, draws);
  bool ok = false;
  while (!ok && result.rounds < params.resample_cap) {
    ++result.rounds;
    for (std::size_t t = 0; t < draws; ++t)
      mem.write(sample, t, mem.read(dst, rng.below(n)));
    merge_sort(mem, sample, tmp.region());

    Item prev = mem.read(sample, 0);
    ok = result.floor < prev;
    for (std::size_t t = 1; ok && t < draws; ++t) {
      const Item cur = mem.read(sample, t);
      ok = prev < cur;
      prev = cur;
    }
  }
  result.degenerate = !ok;
  mem.write(pivots, k - 1, kItemMax);
  return result;
}

/// For a degenerate pivot set: turns each run of equal pivots v (and a run
/// equal to the floor) into a bucket [v, v+1) by bumping the run's last
/// slot. Such buckets hold a single value and need no further sorting.
template <CellMemory M>
void collapse_equal_pivot_runs(M& mem, typename M::Region pivots, Item floor) {
  const std::size_t finite = pivots.size() - 1;
  std::size_t s = 0;
  while (s < finite) {
    const Item v = mem.read(pivots, s);
    std::size_t e = s + 1;
    while (e < finite && mem.read(pivots, e) == v) ++e;
    if ((e - s >= 2 || v == floor) && v != kItemMax)
      mem.write(pivots, e - 1, v + 1);
    s = e;
  }
}

/// True when every item of the bucket [lo, hi) must equal lo. hi_unbounded
/// marks the sentinel bucket.
constexpr bool single_value_bucket(Item lo, Item hi, bool hi_unbounded) {
  return lo == kItemMax || (!hi_unbounded && lo + 1 == hi);
}

/// Computes the start index of each bucket in the destination. Each sorted
/// column is scanned together with the sorted pivot list, so the pass is a
/// set of sequential scans with no searching. Afterwards buc[0] = 0 and
/// buc[j] = |{x in dst : x < pivots[j-1]}|.
template <CellMemory M>
void initial_bucket_cursors(M& mem, typename M::Region dst,
                            typename M::Region col, typename M::Region col_end,
                            typename M::Region pivots, typename M::Region buc) {
  const std::size_t k = pivots.size();
  assert(buc.size() == k && k >= 1);
  for (std::size_t j = 0; j < k; ++j) mem.write(buc, j, 0);

  if constexpr (std::is_same_v<M, NativeMemory>) {
    // Same counts, branch-free merge of each column with the pivots.
    const Item* d = dst.data();
    const Item* piv = pivots.data();
    Item* cnt = buc.data();
    for (std::size_t i = 0; i < col.size(); ++i) {
      auto c = static_cast<std::size_t>(col.data()[i]);
      const auto e = static_cast<std::size_t>(col_end.data()[i]);
      std::size_t j = 0;
      while (c < e && j + 1 < k) {
        const bool lt = d[c] < piv[j];
        cnt[j] += lt;
        c += lt;
        j += !lt;
      }
      cnt[k - 1] += static_cast<Item>(e - c);
    }
  } else {
    for (std::size_t i = 0; i < col.size(); ++i) {
      auto c = static_cast<std::size_t>(mem.read(col, i));
      const auto e = static_cast<std::size_t>(mem.read(col_end, i));
      if (c >= e) continue;
      std::size_t j = 0;
      Item bound = j + 1 < k ? mem.read(pivots, j) : kItemMax;
      Item run = 0;
      for (; c < e; ++c) {
        const Item x = mem.read(dst, c);
        while (j + 1 < k && !(x < bound)) {
          if (run) mem.write(buc, j, mem.read(buc, j) + run);
          run = 0;
          ++j;
          if (j + 1 < k) bound = mem.read(pivots, j);
        }
        ++run;
      }
      if (run) mem.write(buc, j, mem.read(buc, j) + run);
    }
  }

  Item start = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const Item size = mem.read(buc, j);
    mem.write(buc, j, start);
    start += size;
  }
}

/// Bucket boundaries from the cursors left by a full transpose: cursor j
/// ends where bucket j+1 starts, so bucket j is [after[j-1], after[j]) with
/// after[-1] = 0.
inline std::vector<std::pair<std::size_t, std::size_t>> bucket_ranges(
    std::span<const Item> after) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve(after.size());
  Item lo = 0;
  for (std::size_t j = 0; j < after.size(); ++j) {
    if (after[j] < lo)
      throw std::logic_error("bucket cursor " + std::to_string(j) +
                             " moved backwards: corrupted transpose state");
    ranges.emplace_back(static_cast<std::size_t>(lo),
                        static_cast<std::size_t>(after[j]));
    lo = after[j];
  }
  return ranges;
}

}  // namespace squaresort

#endif  // SQUARESORT_PIVOTS_HPP_

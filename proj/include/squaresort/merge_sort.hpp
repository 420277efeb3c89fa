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

// Top-down binary merge sort over a memory backend. Sorts the pivot sample
// inside SquareSort and doubles as the IO contrast baseline in the harness.

#ifndef SQUARESORT_MERGE_SORT_HPP_
#define SQUARESORT_MERGE_SORT_HPP_

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <type_traits>

#include "squaresort/memory.hpp"

namespace squaresort {

namespace detail {

/// Longest range sorted by branch_free_insertion on the native backend.
/// Its cost is quadratic in every case.
inline constexpr std::size_t kBranchFreeSortMax = 32;

/// Insertion sort of s[0, n) into d[0, n) without data-dependent branches:
/// inserting x into sorted d[0, i) sets d[t] = max(d[t-1], min(d[t], x)).
/// s may equal d.
inline void branch_free_insertion(const Item* s, Item* d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const Item x = s[i];
    if (i == 0) {
      d[0] = x;
      continue;
    }
    d[i] = std::max(d[i - 1], x);
    for (std::size_t t = i - 1; t > 0; --t)
      d[t] = std::max(d[t - 1], std::min(d[t], x));
    d[0] = std::min(d[0], x);
  }
}

template <CellMemory M>
void merge_sort_range(M& mem, typename M::Region a, typename M::Region tmp,
                      std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return;
  if constexpr (std::is_same_v<M, NativeMemory>) {
    if (hi - lo <= kBranchFreeSortMax) {
      branch_free_insertion(a.data() + lo, a.data() + lo, hi - lo);
      return;
    }
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  merge_sort_range(mem, a, tmp, lo, mid);
  merge_sort_range(mem, a, tmp, mid, hi);

  std::size_t i = lo, j = mid, out = lo;
  while (i < mid && j < hi) {
    const Item x = mem.read(a, i);
    const Item y = mem.read(a, j);
    if (y < x) {
      mem.write(tmp, out++, y);
      ++j;
    } else {
      mem.write(tmp, out++, x);
      ++i;
    }
  }
  while (i < mid) mem.write(tmp, out++, mem.read(a, i++));
  while (j < hi) mem.write(tmp, out++, mem.read(a, j++));
  for (std::size_t t = lo; t < hi; ++t) mem.write(a, t, mem.read(tmp, t));
}

}  // namespace detail

/// Sorts a in place; tmp must hold at least a.size() cells.
template <CellMemory M>
void merge_sort(M& mem, typename M::Region a, typename M::Region tmp) {
  assert(tmp.size() >= a.size());
  detail::merge_sort_range(mem, a, tmp, 0, a.size());
}

/// Baseline entry point with the same shape as square_sort: the ascending
/// order of src lands in dst, src is used as scratch.
template <CellMemory M>
void merge_sort_into(M& mem, typename M::Region src, typename M::Region dst,
                     std::size_t n) {
  copy_cells(mem, src, dst, n);
  merge_sort(mem, dst.slice(0, n), src.slice(0, n));
}

}  // namespace squaresort

#endif  // SQUARESORT_MERGE_SORT_HPP_

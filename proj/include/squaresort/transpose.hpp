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

// Skew transposition: moves the items of a set of sorted columns into
// bucket-contiguous order in a destination buffer. Bucket i takes the items x
// with pivots[i-1] <= x < pivots[i]; within a bucket, items appear in column
// order. The recursive version splits (columns x buckets) into quadrants so
// that, once a quadrant is small, its column heads and bucket tails all fit
// in cache.

#ifndef SQUARESORT_TRANSPOSE_HPP_
#define SQUARESORT_TRANSPOSE_HPP_

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <type_traits>

#include "squaresort/memory.hpp"
#include "squaresort/types.hpp"

namespace squaresort {

/// Cursor arrays shared by every call of one transposition. All four arrays
/// live in the memory backend and are updated in place.
template <class Region>
struct TransposeFrame {
  Region col;      // next unread index of each column
  Region col_end;  // end-exclusive limit of each column
  Region pivots;   // exclusive upper bound of each bucket
  Region buc;      // next free index of each bucket in the destination
  bool open_top = true;  // the last pivot slot stands for +infinity

  std::size_t columns() const { return col.size(); }
  std::size_t buckets() const { return pivots.size(); }

  TransposeFrame sub(std::size_t col_lo, std::size_t col_n,
                     std::size_t buc_lo, std::size_t buc_n) const {
    const bool top = open_top && buc_lo + buc_n == buckets();
    return {col.slice(col_lo, col_n), col_end.slice(col_lo, col_n),
            pivots.slice(buc_lo, buc_n), buc.slice(buc_lo, buc_n), top};
  }
};

/// Instrumentation for the recursion shape.
struct TransposeProbe {
  std::size_t calls = 0;
  std::size_t naive_calls = 0;
  std::size_t max_imbalance = 0;  // max |k - l| over all calls
  std::size_t max_depth = 0;
};

template <CellMemory M>
void naive_skew_transpose(M& mem, typename M::Region src,
                          typename M::Region dst,
                          const TransposeFrame<typename M::Region>& f) {
  const std::size_t k = f.buckets();
  const std::size_t l = f.columns();
  for (std::size_t i = 0; i < k; ++i) {
    const bool unbounded = f.open_top && i + 1 == k;
    const Item bound = unbounded ? kItemMax : mem.read(f.pivots, i);
    const std::size_t first = static_cast<std::size_t>(mem.read(f.buc, i));
    std::size_t out = first;
    for (std::size_t j = 0; j < l; ++j) {
      const std::size_t start = static_cast<std::size_t>(mem.read(f.col, j));
      const std::size_t end = static_cast<std::size_t>(mem.read(f.col_end, j));
      std::size_t c = start;
      while (c < end) {
        const Item x = mem.read(src, c);
        if (!unbounded && !(x < bound)) break;
        assert(out < dst.size() && "bucket overflow: corrupted cursors");
        mem.write(dst, out++, x);
        ++c;
      }
      if (c != start) mem.write(f.col, j, static_cast<Item>(c));
    }
    if (out != first) mem.write(f.buc, i, static_cast<Item>(out));
  }
}

namespace detail {

// Native leaf: walks each column once against its pivots instead of walking
// each bucket over all columns. Buckets still receive columns in order, so
// the final state equals naive_skew_transpose.
inline void native_leaf_transpose(
    NativeMemory::Region src_region, NativeMemory::Region dst_region,
    const TransposeFrame<NativeMemory::Region>& f) {
  const std::size_t k = f.buckets();
  const std::size_t bounded = f.open_top ? k - 1 : k;
  const Item* src = src_region.data();
  Item* dst = dst_region.data();
  Item* col = f.col.data();
  const Item* col_end = f.col_end.data();
  const Item* piv = f.pivots.data();
  Item* cur = f.buc.data();
  Item sink;
  for (std::size_t j = 0; j < f.columns(); ++j) {
    auto c = static_cast<std::size_t>(col[j]);
    const auto e = static_cast<std::size_t>(col_end[j]);
    std::size_t i = 0;
    while (c < e && i < bounded) {
      const Item x = src[c];
      const bool lt = x < piv[i];
      // Masked select; a ternary here compiles to a branch.
      const std::uintptr_t mask = 0 - static_cast<std::uintptr_t>(lt);
      const auto hit = reinterpret_cast<std::uintptr_t>(dst + cur[i]);
      const auto miss = reinterpret_cast<std::uintptr_t>(&sink);
      *reinterpret_cast<Item*>((hit & mask) | (miss & ~mask)) = x;
      cur[i] += lt;
      c += lt;
      i += !lt;
    }
    if (f.open_top && c < e) {
      auto out = static_cast<std::size_t>(cur[k - 1]);
      for (; c < e; ++c) dst[out++] = src[c];
      cur[k - 1] = static_cast<Item>(out);
    }
    col[j] = static_cast<Item>(c);
  }
}

template <CellMemory M>
void skew_transpose_rec(M& mem, typename M::Region src, typename M::Region dst,
                        const TransposeFrame<typename M::Region>& f,
                        std::size_t threshold, TransposeProbe* probe,
                        std::size_t depth) {
  const std::size_t l = f.columns();
  const std::size_t k = f.buckets();
  if (probe) {
    ++probe->calls;
    probe->max_imbalance =
        std::max(probe->max_imbalance, k > l ? k - l : l - k);
    probe->max_depth = std::max(probe->max_depth, depth);
  }
  if (l < threshold || k < threshold) {
    if (probe) ++probe->naive_calls;
    if constexpr (std::is_same_v<M, NativeMemory>)
      native_leaf_transpose(src, dst, f);
    else
      naive_skew_transpose(mem, src, dst, f);
    return;
  }
  const std::size_t lh = l / 2;
  const std::size_t kh = k / 2;
  // Order matters: a bucket must receive the first half of the columns
  // before the second half.
  skew_transpose_rec(mem, src, dst, f.sub(0, lh, 0, kh), threshold, probe,
                     depth + 1);
  skew_transpose_rec(mem, src, dst, f.sub(lh, l - lh, 0, kh), threshold,
                     probe, depth + 1);
  skew_transpose_rec(mem, src, dst, f.sub(0, lh, kh, k - kh), threshold,
                     probe, depth + 1);
  skew_transpose_rec(mem, src, dst, f.sub(lh, l - lh, kh, k - kh), threshold,
                     probe, depth + 1);
}

}  // namespace detail

/// Same contract and same final state as naive_skew_transpose.
template <CellMemory M>
void skew_transpose(M& mem, typename M::Region src, typename M::Region dst,
                    const TransposeFrame<typename M::Region>& f,
                    const SortParams& params, TransposeProbe* probe = nullptr) {
  detail::skew_transpose_rec(mem, src, dst, f, params.naive_threshold, probe,
                             0);
}

}  // namespace squaresort

#endif  // SQUARESORT_TRANSPOSE_HPP_

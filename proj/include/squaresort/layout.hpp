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

#ifndef SQUARESORT_LAYOUT_HPP_
#define SQUARESORT_LAYOUT_HPP_

#include <algorithm>
#include <cstddef>
#include <vector>

#include "squaresort/memory.hpp"
#include "squaresort/types.hpp"

namespace squaresort {

/// The n input cells viewed as m = ceil(sqrt(n)) columns of height m, stored
/// one after another. Indices are 0-based and end-exclusive; trailing
/// columns may be empty.
struct ColumnLayout {
  std::size_t m = 0;
  std::vector<std::size_t> col;
  std::vector<std::size_t> col_end;
};

inline std::size_t column_start(std::size_t i, std::size_t m, std::size_t n) {
  return std::min(i * m, n);
}

inline ColumnLayout column_layout(std::size_t n) {
  ColumnLayout layout;
  layout.m = ceil_sqrt(n);
  layout.col.resize(layout.m);
  layout.col_end.resize(layout.m);
  for (std::size_t i = 0; i < layout.m; ++i) {
    layout.col[i] = column_start(i, layout.m, n);
    layout.col_end[i] = column_start(i + 1, layout.m, n);
  }
  return layout;
}

/// Fills the col / col_end arrays (each of m cells) in modeled memory.
template <CellMemory M>
void write_column_layout(M& mem, std::size_t n, typename M::Region col,
                         typename M::Region col_end) {
  const std::size_t m = col.size();
  for (std::size_t i = 0; i < m; ++i) {
    mem.write(col, i, static_cast<Item>(column_start(i, m, n)));
    mem.write(col_end, i, static_cast<Item>(column_start(i + 1, m, n)));
  }
}

}  // namespace squaresort

#endif  // SQUARESORT_LAYOUT_HPP_

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

// The buffer seam between the sort and the memory it runs on. The sort code
// never touches storage directly: it reads and writes cells of a Region
// through a memory object, so the same algorithm runs on plain RAM
// (NativeMemory) and on the block-transfer simulator (extmem::SimMemory).

#ifndef SQUARESORT_MEMORY_HPP_
#define SQUARESORT_MEMORY_HPP_

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "squaresort/types.hpp"

namespace squaresort {

template <class M>
concept CellMemory = requires(M& mem, typename M::Region r, std::size_t i,
                              Item v) {
  { mem.alloc(i) } -> std::same_as<typename M::Region>;
  mem.release(r);
  { mem.read(r, i) } -> std::convertible_to<Item>;
  mem.write(r, i, v);
  { r.size() } -> std::convertible_to<std::size_t>;
  { r.slice(i, i) } -> std::same_as<typename M::Region>;
};

/// Plain RAM backend. Regions are pointer ranges; auxiliary allocations are
/// counted so peak scratch usage can be reported.
class NativeMemory {
 public:
  class Region {
   public:
    Region() = default;
    Region(Item* data, std::size_t size) : data_(data), size_(size) {}

    std::size_t size() const { return size_; }
    Item* data() const { return data_; }

    Region slice(std::size_t offset, std::size_t length) const {
      assert(offset + length <= size_);
      return Region(data_ + offset, length);
    }

   private:
    Item* data_ = nullptr;
    std::size_t size_ = 0;
  };

  NativeMemory() = default;
  NativeMemory(const NativeMemory&) = delete;
  NativeMemory& operator=(const NativeMemory&) = delete;

  /// Wraps caller-owned storage; not counted as auxiliary space.
  static Region view(std::span<Item> cells) {
    return Region(cells.data(), cells.size());
  }

  /// Stack allocation from a chunked arena. Releases are expected in LIFO
  /// order; an out-of-order release is deferred until everything above it
  /// has been released too.
  Region alloc(std::size_t length) {
    live_cells_ += length;
    if (live_cells_ > peak_cells_) peak_cells_ = live_cells_;
    if (length == 0) return Region();
    while (current_ < chunks_.size() &&
           chunks_[current_].capacity - chunks_[current_].used < length)
      ++current_;
    if (current_ == chunks_.size()) {
      const std::size_t last = chunks_.empty() ? 0 : chunks_.back().capacity;
      const std::size_t cap = std::max({length, 2 * last, kMinChunk});
      chunks_.push_back({std::make_unique<Item[]>(cap), cap, 0});
    }
    Chunk& c = chunks_[current_];
    Item* p = c.cells.get() + c.used;
    c.used += length;
    stack_.push_back({current_, length, false});
    return Region(p, length);
  }

  void release(Region r) {
    assert(live_cells_ >= r.size());
    live_cells_ -= r.size();
    if (r.size() == 0) return;
    std::size_t i = stack_.size();
    while (i-- > 0) {
      const Block& b = stack_[i];
      if (!b.freed && b.length == r.size() && start_of(i) == r.data()) break;
    }
    assert(i < stack_.size() && "release of a region not from this arena");
    stack_[i].freed = true;
    while (!stack_.empty() && stack_.back().freed) {
      chunks_[stack_.back().chunk].used -= stack_.back().length;
      stack_.pop_back();
      current_ = stack_.empty() ? 0 : stack_.back().chunk;
    }
  }

  Item read(Region r, std::size_t i) const {
    assert(i < r.size());
    return r.data()[i];
  }

  void write(Region r, std::size_t i, Item v) {
    assert(i < r.size());
    r.data()[i] = v;
  }

  std::size_t live_cells() const { return live_cells_; }
  std::size_t peak_cells() const { return peak_cells_; }
  void reset_peak() { peak_cells_ = live_cells_; }

 private:
  static constexpr std::size_t kMinChunk = 1 << 12;

  struct Chunk {
    std::unique_ptr<Item[]> cells;
    std::size_t capacity = 0;
    std::size_t used = 0;
  };
  struct Block {
    std::size_t chunk;
    std::size_t length;
    bool freed;
  };

  // Start address of stack entry i, recomputed from the entries above it in
  // the same chunk.
  const Item* start_of(std::size_t i) const {
    const Chunk& c = chunks_[stack_[i].chunk];
    std::size_t end = c.used;
    for (std::size_t j = stack_.size(); j-- > i + 1;)
      if (stack_[j].chunk == stack_[i].chunk) end -= stack_[j].length;
    return c.cells.get() + end - stack_[i].length;
  }

  std::vector<Chunk> chunks_;
  std::vector<Block> stack_;
  std::size_t current_ = 0;
  std::size_t live_cells_ = 0;
  std::size_t peak_cells_ = 0;
};

/// RAII handle for an auxiliary array allocated from a memory backend.
template <CellMemory M>
class ScratchArray {
 public:
  using Region = typename M::Region;

  ScratchArray(M& mem, std::size_t length)
      : mem_(&mem), region_(mem.alloc(length)) {}
  ~ScratchArray() {
    if (mem_) mem_->release(region_);
  }

  ScratchArray(const ScratchArray&) = delete;
  ScratchArray& operator=(const ScratchArray&) = delete;
  ScratchArray(ScratchArray&& other) noexcept
      : mem_(std::exchange(other.mem_, nullptr)), region_(other.region_) {}
  ScratchArray& operator=(ScratchArray&&) = delete;

  Region region() const { return region_; }
  operator Region() const { return region_; }

 private:
  M* mem_;
  Region region_;
};

template <CellMemory M>
void copy_cells(M& mem, typename M::Region from, typename M::Region to,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) mem.write(to, i, mem.read(from, i));
}

}  // namespace squaresort

#endif  // SQUARESORT_MEMORY_HPP_

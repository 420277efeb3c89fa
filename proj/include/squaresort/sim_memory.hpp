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

// External-memory simulator: a flat, unbounded address space of 64-bit cells
// partitioned into blocks of B cells, accessed through a fully associative
// cache of M/B block frames with LRU replacement and write-back. Only block
// transfers are modeled; cell values always live in the backing store, so
// the simulator never changes what a program computes.

#ifndef SQUARESORT_SIM_MEMORY_HPP_
#define SQUARESORT_SIM_MEMORY_HPP_

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "squaresort/types.hpp"

namespace squaresort::extmem {

struct CacheConfig {
  std::size_t cache_cells = 0;  // M
  std::size_t block_cells = 0;  // B

  std::size_t frames() const { return cache_cells / block_cells; }
  bool tall() const { return cache_cells >= block_cells * block_cells; }

  /// Throws std::invalid_argument unless B >= 1, M >= B and B divides M.
  void validate() const;
};

struct IoCounter {
  std::uint64_t loads = 0;
  std::uint64_t writebacks = 0;

  std::uint64_t total() const { return loads + writebacks; }
  friend bool operator==(const IoCounter&, const IoCounter&) = default;
};

class SimMemory {
 public:
  /// A contiguous range of cells. Allocated regions start on a block
  /// boundary; slices may start anywhere.
  class Region {
   public:
    Region() = default;
    Region(std::size_t base, std::size_t size) : base_(base), size_(size) {}

    std::size_t base() const { return base_; }
    std::size_t size() const { return size_; }

    Region slice(std::size_t offset, std::size_t length) const {
      assert(offset + length <= size_);
      return Region(base_ + offset, length);
    }

   private:
    std::size_t base_ = 0;
    std::size_t size_ = 0;
  };

  explicit SimMemory(CacheConfig config);

  SimMemory(const SimMemory&) = delete;
  SimMemory& operator=(const SimMemory&) = delete;
  SimMemory(SimMemory&&) = default;
  SimMemory& operator=(SimMemory&&) = default;

  const CacheConfig& config() const { return config_; }

  /// Allocates on a stack: the region starts at the first block boundary
  /// above the current top. Costs no transfers.
  Region alloc(std::size_t length);

  /// Frees a region. The stack top drops once every region above it has
  /// been released, so later allocations reuse the same addresses the way
  /// a call stack does.
  void release(Region r);

  Item read(Region r, std::size_t i) {
    assert(i < r.size());
    const std::size_t addr = r.base() + i;
    touch(addr / config_.block_cells, false);
    return cells_[addr];
  }

  void write(Region r, std::size_t i, Item v) {
    assert(i < r.size());
    const std::size_t addr = r.base() + i;
    touch(addr / config_.block_cells, true);
    cells_[addr] = v;
  }

  /// Untracked access for setup and verification; bypasses the cache model
  /// entirely (no transfers, no recency update).
  Item peek(Region r, std::size_t i) const {
    assert(i < r.size());
    return cells_[r.base() + i];
  }
  void poke(Region r, std::size_t i, Item v) {
    assert(i < r.size());
    cells_[r.base() + i] = v;
  }

  /// Writes back every dirty resident block, then returns the counters.
  /// Residency is unchanged; the cache is clean afterwards.
  IoCounter stats();

  /// Zeroes the counters without touching residency.
  void reset_stats() { counter_ = {}; }

  /// Writes back dirty blocks (counted) and empties the cache, so the next
  /// access to any block misses.
  void drop_cache();

  std::size_t resident_blocks() const { return used_frames_; }
  bool is_resident(std::size_t block) const {
    return block < block_frame_.size() && block_frame_[block] >= 0;
  }
  std::size_t top() const { return top_; }

 private:
  struct Frame {
    std::size_t block = 0;
    std::int32_t prev = -1;
    std::int32_t next = -1;
    bool dirty = false;
  };

  void touch(std::size_t block, bool dirty) {
    if (block == last_block_) {
      frames_[last_frame_].dirty |= dirty;
      return;
    }
    touch_slow(block, dirty);
  }
  void touch_slow(std::size_t block, bool dirty);
  void unlink(std::int32_t f);
  void push_front(std::int32_t f);

  struct Allocation {
    std::size_t base;
    std::size_t size;
    bool freed;
  };

  CacheConfig config_;
  std::vector<Item> cells_;
  std::vector<std::int32_t> block_frame_;  // block id -> frame, -1 if absent
  std::vector<Frame> frames_;
  std::vector<Allocation> stack_;
  std::int32_t head_ = -1;  // most recently used
  std::int32_t tail_ = -1;  // least recently used
  std::size_t used_frames_ = 0;
  std::size_t last_block_ = static_cast<std::size_t>(-1);
  std::int32_t last_frame_ = -1;
  std::size_t top_ = 0;
  IoCounter counter_;
};

}  // namespace squaresort::extmem

#endif  // SQUARESORT_SIM_MEMORY_HPP_

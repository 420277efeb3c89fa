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

#include "squaresort/sim_memory.hpp"

#include <stdexcept>
#include <string>

namespace squaresort::extmem {

void CacheConfig::validate() const {
  if (block_cells < 1) throw std::invalid_argument("block size B must be >= 1");
  if (cache_cells < block_cells)
    throw std::invalid_argument("cache size M=" + std::to_string(cache_cells) +
                                " is smaller than block size B=" +
                                std::to_string(block_cells));
  if (cache_cells % block_cells != 0)
    throw std::invalid_argument("cache size M=" + std::to_string(cache_cells) +
                                " is not a multiple of B=" +
                                std::to_string(block_cells));
}

SimMemory::SimMemory(CacheConfig config) : config_(config) {
  config_.validate();
  frames_.resize(config_.frames());
}

SimMemory::Region SimMemory::alloc(std::size_t length) {
  const std::size_t b = config_.block_cells;
  const std::size_t base = (top_ + b - 1) / b * b;
  top_ = base + length;
  if (cells_.size() < top_) {
    cells_.resize(top_);
    block_frame_.resize((top_ + b - 1) / b, -1);
  }
  stack_.push_back({base, length, false});
  return Region(base, length);
}

void SimMemory::release(Region r) {
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
    if (!it->freed && it->base == r.base() && it->size == r.size()) {
      it->freed = true;
      break;
    }
  }
  while (!stack_.empty() && stack_.back().freed) stack_.pop_back();
  top_ = stack_.empty() ? 0 : stack_.back().base + stack_.back().size;
}

void SimMemory::unlink(std::int32_t f) {
  Frame& fr = frames_[f];
  if (fr.prev >= 0) frames_[fr.prev].next = fr.next; else head_ = fr.next;
  if (fr.next >= 0) frames_[fr.next].prev = fr.prev; else tail_ = fr.prev;
  fr.prev = fr.next = -1;
}

void SimMemory::push_front(std::int32_t f) {
  Frame& fr = frames_[f];
  fr.prev = -1;
  fr.next = head_;
  if (head_ >= 0) frames_[head_].prev = f;
  head_ = f;
  if (tail_ < 0) tail_ = f;
}

void SimMemory::touch_slow(std::size_t block, bool dirty) {
  assert(block < block_frame_.size());
  std::int32_t f = block_frame_[block];
  if (f >= 0) {
    if (f != head_) {
      unlink(f);
      push_front(f);
    }
  } else {
    ++counter_.loads;
    if (used_frames_ < frames_.size()) {
      f = static_cast<std::int32_t>(used_frames_++);
    } else {
      f = tail_;
      Frame& victim = frames_[f];
      if (victim.dirty) ++counter_.writebacks;
      block_frame_[victim.block] = -1;
      unlink(f);
    }
    frames_[f].block = block;
    frames_[f].dirty = false;
    block_frame_[block] = f;
    push_front(f);
  }
  frames_[f].dirty |= dirty;
  last_block_ = block;
  last_frame_ = f;
}

IoCounter SimMemory::stats() {
  for (std::int32_t f = head_; f >= 0; f = frames_[f].next) {
    if (frames_[f].dirty) {
      ++counter_.writebacks;
      frames_[f].dirty = false;
    }
  }
  return counter_;
}

void SimMemory::drop_cache() {
  stats();
  for (std::int32_t f = head_; f >= 0; f = frames_[f].next)
    block_frame_[frames_[f].block] = -1;
  head_ = tail_ = -1;
  used_frames_ = 0;
  last_block_ = static_cast<std::size_t>(-1);
  last_frame_ = -1;
}

}  // namespace squaresort::extmem

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

#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "squaresort/layout.hpp"
#include "squaresort/memory.hpp"
#include "squaresort/sim_memory.hpp"

using namespace squaresort;
using extmem::CacheConfig;
using extmem::SimMemory;

TEST_SUITE("layout") {
  TEST_CASE("n=9 gives three full columns") {
    const auto l = column_layout(9);
    CHECK(l.m == 3);
    CHECK(l.col == std::vector<std::size_t>{0, 3, 6});
    CHECK(l.col_end == std::vector<std::size_t>{3, 6, 9});
  }

  TEST_CASE("n=10 leaves the last column empty") {
    const auto l = column_layout(10);
    CHECK(l.m == 4);
    CHECK(l.col == std::vector<std::size_t>{0, 4, 8, 10});
    CHECK(l.col_end == std::vector<std::size_t>{4, 8, 10, 10});
  }

  TEST_CASE("n=17 has sizes 5,5,5,2,0") {
    const auto l = column_layout(17);
    CHECK(l.m == 5);
    CHECK(l.col == std::vector<std::size_t>{0, 5, 10, 15, 17});
    CHECK(l.col_end == std::vector<std::size_t>{5, 10, 15, 17, 17});
  }

  TEST_CASE("columns tile [0, n) for every n up to 2000") {
    for (std::size_t n = 1; n <= 2000; ++n) {
      const auto l = column_layout(n);
      REQUIRE(l.m * l.m >= n);
      REQUIRE((l.m - 1) * (l.m - 1) < n);
      std::size_t expect = 0;
      for (std::size_t i = 0; i < l.m; ++i) {
        REQUIRE(l.col[i] == expect);
        REQUIRE(l.col[i] <= l.col_end[i]);
        REQUIRE(l.col_end[i] - l.col[i] <= l.m);
        expect = l.col_end[i];
      }
      REQUIRE(expect == n);
    }
  }

  TEST_CASE("write_column_layout matches column_layout") {
    std::vector<Item> col(5), end(5);
    NativeMemory mem;
    write_column_layout(mem, 17, NativeMemory::view(col), NativeMemory::view(end));
    const auto l = column_layout(17);
    CHECK(col == std::vector<Item>(l.col.begin(), l.col.end()));
    CHECK(end == std::vector<Item>(l.col_end.begin(), l.col_end.end()));
  }
}

TEST_SUITE("native memory") {
  TEST_CASE("peak counts live auxiliary cells") {
    NativeMemory mem;
    {
      ScratchArray<NativeMemory> a(mem, 10);
      ScratchArray<NativeMemory> b(mem, 5);
      CHECK(mem.live_cells() == 15);
    }
    ScratchArray<NativeMemory> c(mem, 3);
    CHECK(mem.live_cells() == 3);
    CHECK(mem.peak_cells() == 15);
  }

  TEST_CASE("arena regions are disjoint and keep their contents") {
    NativeMemory mem;
    Rng rng(5);
    std::vector<std::pair<NativeMemory::Region, Item>> live;
    for (int step = 0; step < 2000; ++step) {
      if (live.empty() || rng.below(3) != 0) {
        const std::size_t len = 1 + rng.below(rng.below(2) ? 20000 : 50);
        const auto r = mem.alloc(len);
        const Item tag = static_cast<Item>(step);
        for (std::size_t i = 0; i < len; ++i) mem.write(r, i, tag);
        live.emplace_back(r, tag);
      } else {
        // Mostly LIFO, sometimes out of order.
        const std::size_t pick =
            rng.below(4) ? live.size() - 1 : rng.below(live.size());
        const auto [r, tag] = live[pick];
        for (std::size_t i = 0; i < r.size(); ++i) REQUIRE(mem.read(r, i) == tag);
        mem.release(r);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
    for (const auto& [r, tag] : live)
      for (std::size_t i = 0; i < r.size(); ++i) REQUIRE(mem.read(r, i) == tag);
  }

  TEST_CASE("zero-length allocation") {
    NativeMemory mem;
    const auto r = mem.alloc(0);
    CHECK(r.size() == 0);
    mem.release(r);
    CHECK(mem.live_cells() == 0);
  }
}

TEST_SUITE("sim memory") {
  TEST_CASE("configuration") {
    CHECK(SimMemory(CacheConfig{16, 4}).config().frames() == 4);
    CHECK_THROWS_AS(SimMemory(CacheConfig{4, 8}), std::invalid_argument);
    CHECK_THROWS_AS(SimMemory(CacheConfig{10, 4}), std::invalid_argument);
    CHECK_THROWS_AS(SimMemory(CacheConfig{16, 0}), std::invalid_argument);
    CHECK(CacheConfig{64, 8}.tall());
    CHECK_FALSE(CacheConfig{32, 8}.tall());
  }

  TEST_CASE("allocation is block aligned and free of transfers") {
    SimMemory mem(CacheConfig{16, 4});
    const auto z = mem.alloc(0);
    CHECK(z.size() == 0);
    const auto a = mem.alloc(10);
    const auto b = mem.alloc(10);
    CHECK(a.base() % 4 == 0);
    CHECK(b.base() % 4 == 0);
    CHECK((a.base() + a.size() <= b.base() || b.base() + b.size() <= a.base()));
    CHECK(mem.stats().total() == 0);
  }

  TEST_CASE("sequential read of 100 cells costs 25 loads") {
    SimMemory mem(CacheConfig{16, 4});
    const auto r = mem.alloc(100);
    for (std::size_t i = 0; i < 100; ++i) (void)mem.read(r, i);
    const auto s = mem.stats();
    CHECK(s.loads == 25);
    CHECK(s.writebacks == 0);
  }

  TEST_CASE("one write then stats is one load and one writeback") {
    SimMemory mem(CacheConfig{16, 4});
    const auto r = mem.alloc(4);
    mem.write(r, 0, 1);
    const auto s = mem.stats();
    CHECK(s.loads == 1);
    CHECK(s.writebacks == 1);
    CHECK(s.total() == 2);
    CHECK(mem.stats().total() == 2);  // idempotent
  }

  TEST_CASE("no accesses") {
    SimMemory mem(CacheConfig{16, 4});
    CHECK(mem.stats() == extmem::IoCounter{});
  }

  TEST_CASE("second pass over a resident region hits") {
    SimMemory mem(CacheConfig{16, 4});
    const auto r = mem.alloc(16);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < 16; ++i) (void)mem.read(r, i);
    CHECK(mem.stats().loads == 4);
  }

  TEST_CASE("a cycle one block longer than the cache thrashes") {
    SimMemory mem(CacheConfig{16, 4});
    const auto r = mem.alloc(20);
    const int rounds = 7;
    for (int k = 0; k < rounds; ++k)
      for (std::size_t b = 0; b < 5; ++b) (void)mem.read(r, b * 4);
    CHECK(mem.stats().loads == 5 * rounds);
  }

  TEST_CASE("reset_stats keeps residency") {
    SimMemory mem(CacheConfig{16, 4});
    const auto r = mem.alloc(16);
    for (std::size_t i = 0; i < 16; ++i) mem.write(r, i, 1);
    (void)mem.stats();  // flush
    mem.reset_stats();
    CHECK(mem.stats().total() == 0);
    for (std::size_t i = 0; i < 16; ++i) (void)mem.read(r, i);
    CHECK(mem.stats().total() == 0);
  }

  TEST_CASE("reset mid-run leaves hit and miss behavior unchanged") {
    auto run = [](bool reset) {
      SimMemory mem(CacheConfig{16, 4});
      const auto r = mem.alloc(40);
      std::uint64_t before = 0;
      for (std::size_t i = 0; i < 40; i += 3) (void)mem.read(r, i);
      if (reset) {
        before = mem.stats().loads;
        mem.reset_stats();
      }
      for (std::size_t i = 0; i < 40; i += 5) (void)mem.read(r, i);
      return before + mem.stats().loads;
    };
    CHECK(run(true) == run(false));
  }

  TEST_CASE("drop_cache flushes and empties the cache") {
    SimMemory mem(CacheConfig{16, 4});
    const auto r = mem.alloc(8);
    mem.write(r, 0, 3);
    mem.drop_cache();
    CHECK(mem.resident_blocks() == 0);
    CHECK(mem.peek(r, 0) == 3);
    mem.reset_stats();
    CHECK(mem.read(r, 0) == 3);
    CHECK(mem.stats().loads == 1);
  }

  TEST_CASE("released stack space is reused") {
    SimMemory mem(CacheConfig{16, 4});
    const auto a = mem.alloc(5);
    const auto b = mem.alloc(3);
    mem.release(a);  // out of order: top stays until b goes
    CHECK(mem.top() >= b.base() + b.size());
    mem.release(b);
    CHECK(mem.top() == 0);
    CHECK(mem.alloc(7).base() == 0);
  }

  TEST_CASE("property: shadow array, capacity and sub-cache cost") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t block = std::size_t{1} << rng.below(4);
      const std::size_t frames = 1 + rng.below(8);
      SimMemory mem(CacheConfig{block * frames, block});
      const std::size_t len = 1 + rng.below(200);
      const auto r = mem.alloc(len);
      std::vector<Item> shadow(len, 0);
      for (std::size_t i = 0; i < len; ++i) mem.poke(r, i, 0);

      std::set<std::size_t> touched;
      extmem::IoCounter last{};
      for (int step = 0; step < 500; ++step) {
        const std::size_t i = rng.below(len);
        touched.insert((r.base() + i) / block);
        if (rng.below(2)) {
          const Item v = static_cast<Item>(rng.next());
          mem.write(r, i, v);
          shadow[i] = v;
        } else {
          REQUIRE(mem.read(r, i) == shadow[i]);
        }
        REQUIRE(mem.resident_blocks() <= frames);
        if (step % 50 == 0) {
          const auto now = mem.stats();
          REQUIRE(now.loads >= last.loads);
          REQUIRE(now.writebacks >= last.writebacks);
          last = now;
        }
      }
      if (touched.size() <= frames) {
        // Everything stays resident: one load per distinct block.
        REQUIRE(mem.stats().loads == touched.size());
      }
    }
  }

  TEST_CASE("property: sequential scans cost ceil(r/B) loads when M >= 2B") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t block = 1 + rng.below(16);
      const std::size_t frames = 2 + rng.below(6);
      SimMemory mem(CacheConfig{block * frames, block});
      const std::size_t len = rng.below(500);
      const auto r = mem.alloc(len);
      for (std::size_t i = 0; i < len; ++i) (void)mem.read(r, i);
      REQUIRE(mem.stats().loads == (len + block - 1) / block);
    }
  }

  TEST_CASE("sub-cache workload counts dirty writebacks exactly") {
    SimMemory mem(CacheConfig{64, 8});
    const auto r = mem.alloc(40);  // 5 blocks, 8 frames
    for (std::size_t i = 0; i < 40; i += 2) mem.write(r, i, 1);
    for (std::size_t i = 0; i < 16; ++i) (void)mem.read(r, i);
    const auto s = mem.stats();
    CHECK(s.loads == 5);
    CHECK(s.writebacks == 5);
  }
}

TEST_CASE("ceil_sqrt around perfect squares") {
  static_assert(ceil_sqrt(17) == 5);
  Rng rng(12);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t k = 2 + rng.below(std::uint64_t{1} << (t % 2 ? 12 : 26));
    REQUIRE(ceil_sqrt(k * k) == k);
    REQUIRE(ceil_sqrt(k * k + 1) == k + 1);
    REQUIRE(ceil_sqrt(k * k - 1) == k);
  }
  CHECK(ceil_sqrt(0) == 0);
  CHECK(ceil_sqrt(1) == 1);
  CHECK(ceil_sqrt(2) == 2);
}

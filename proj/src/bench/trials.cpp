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

#include "squaresort/bench/trials.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "squaresort/layout.hpp"
#include "squaresort/memory.hpp"
#include "squaresort/merge_sort.hpp"
#include "squaresort/pivots.hpp"
#include "squaresort/square_sort.hpp"
#include "squaresort/transpose.hpp"
#include "squaresort/verify/oracle.hpp"

namespace squaresort::bench {

namespace {

constexpr std::string_view kAlgoNames[] = {"squaresort", "mergesort-baseline",
                                           "host-library-sort"};

std::string cell_name(std::size_t n, std::size_t b, std::size_t m,
                      std::uint64_t seed) {
  return "n=" + std::to_string(n) + " B=" + std::to_string(b) +
         " M=" + std::to_string(m) + " seed=" + std::to_string(seed);
}

void require_sorted(std::span<const Item> input, std::span<const Item> output,
                    std::string_view what) {
  const verify::CheckResult check =
      verify::check_sorted_permutation(input, output);
  if (!check.ok)
    throw TrialError(std::string(what) + ": output check failed: " +
                     check.reason);
}

double sort_once_ns(Algorithm algo, std::vector<Item>& input,
                    const SortParams& params, std::uint64_t seed,
                    std::vector<Item>& output) {
  using Clock = std::chrono::steady_clock;
  std::vector<Item> scratch = input;
  output.assign(input.size(), 0);
  NativeMemory mem;
  const auto src = NativeMemory::view(scratch);
  const auto dst = NativeMemory::view(output);
  Rng rng(seed);

  const auto start = Clock::now();
  switch (algo) {
    case Algorithm::kSquareSort:
      square_sort(mem, src, dst, input.size(), params, rng);
      break;
    case Algorithm::kMergeSort:
      merge_sort_into(mem, src, dst, input.size());
      break;
    case Algorithm::kLibrarySort:
      std::sort(scratch.begin(), scratch.end());
      std::copy(scratch.begin(), scratch.end(), output.begin());
      break;
  }
  const auto stop = Clock::now();
  const auto ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
          .count();
  if (ns <= 0)
    throw TrialError("timer returned a non-positive duration for n=" +
                     std::to_string(input.size()));
  return static_cast<double>(ns);
}

void collect_times(Algorithm algo, Distribution dist, std::size_t n,
                   std::uint64_t seed, const SortParams& params,
                   std::size_t repeats, std::vector<double>& times) {
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  std::vector<Item> output;
  for (std::size_t r = 0; r < repeats; ++r) {
    const std::uint64_t instance = split_seed(seed, r);
    std::vector<Item> input = generate_input(dist, n, instance);
    times.push_back(sort_once_ns(algo, input, params, instance, output));
    require_sorted(input, output,
                   std::string(to_string(algo)) + " on " +
                       std::string(to_string(dist)) + " n=" +
                       std::to_string(n));
  }
}

BenchRecord make_record(Algorithm algo, Distribution dist, std::size_t n,
                        const SortParams& params, std::vector<double> times) {
  if (n < 2) throw std::invalid_argument("benchmark size must be >= 2");
  BenchRecord rec;
  rec.algo = algo;
  rec.dist = dist;
  rec.cutoff = algo == Algorithm::kSquareSort ? params.cutoff : 0;
  rec.size = n;
  rec.time_ns = std::accumulate(times.begin(), times.end(), 0.0) /
                static_cast<double>(times.size());
  std::sort(times.begin(), times.end());
  const std::size_t h = times.size() / 2;
  rec.median_ns =
      times.size() % 2 ? times[h] : 0.5 * (times[h - 1] + times[h]);
  rec.norm = normalized_time(rec.time_ns, n);
  return rec;
}

}  // namespace

std::string_view to_string(Algorithm a) {
  return kAlgoNames[static_cast<int>(a)];
}

Algorithm parse_algorithm(std::string_view name) {
  for (int i = 0; i < 3; ++i)
    if (kAlgoNames[i] == name) return static_cast<Algorithm>(i);
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected squaresort, mergesort-baseline or "
                              "host-library-sort)");
}

std::string_view to_string(IoScope s) {
  return s == IoScope::kFullSort ? "full-sort" : "transpose-only";
}

IoScope parse_scope(std::string_view name) {
  if (name == "full-sort") return IoScope::kFullSort;
  if (name == "transpose-only") return IoScope::kTransposeOnly;
  throw std::invalid_argument("unknown scope '" + std::string(name) +
                              "' (expected full-sort or transpose-only)");
}

double normalized_time(double time_ns, std::size_t n) {
  return time_ns / (static_cast<double>(n) * std::log2(static_cast<double>(n)));
}

BenchRecord run_time_trial(Algorithm algo, Distribution dist, std::size_t n,
                           std::uint64_t seed, const SortParams& params,
                           std::size_t repeats) {
  params.validate();
  std::vector<double> times;
  collect_times(algo, dist, n, seed, params, repeats, times);
  return make_record(algo, dist, n, params, std::move(times));
}

BenchRecord run_time_trials(Algorithm algo, Distribution dist, std::size_t n,
                            const std::vector<std::uint64_t>& seeds,
                            const SortParams& params, std::size_t repeats) {
  params.validate();
  if (seeds.empty()) throw std::invalid_argument("at least one seed required");
  std::vector<double> times;
  for (std::uint64_t seed : seeds)
    collect_times(algo, dist, n, seed, params, repeats, times);
  return make_record(algo, dist, n, params, std::move(times));
}

double io_ratio(std::uint64_t io, std::size_t n, std::size_t block,
                std::size_t cache) {
  const double blocks = static_cast<double>(n) / static_cast<double>(block);
  double levels = 1.0;
  const std::size_t fan = cache / block;
  if (fan > 1)
    levels = std::max(1.0, std::log(static_cast<double>(n)) /
                               std::log(static_cast<double>(fan)));
  return static_cast<double>(io) / (blocks * levels);
}

IoRecord run_io_trial(std::size_t n, const extmem::CacheConfig& config,
                      std::uint64_t seed, const SortParams& params,
                      const IoTrialOptions& options) {
  config.validate();
  params.validate();
  const std::string where =
      cell_name(n, config.block_cells, config.cache_cells, seed);
  if (!config.tall() && !options.allow_non_tall)
    throw TrialError(where + ": cache is not tall (M < B^2)");
  if (n < 2) throw TrialError(where + ": size must be >= 2");
  if (options.algo == Algorithm::kLibrarySort)
    throw TrialError(where + ": host-library-sort has no simulated backend");

  using extmem::SimMemory;
  SimMemory mem(config);
  const std::vector<Item> input = generate_input(options.dist, n, seed);
  const SimMemory::Region src = mem.alloc(n);
  const SimMemory::Region dst = mem.alloc(n);
  for (std::size_t i = 0; i < n; ++i) mem.poke(src, i, input[i]);

  IoRecord rec;
  rec.size = n;
  rec.block = config.block_cells;
  rec.cache = config.cache_cells;
  rec.seed = seed;
  Rng rng(seed);

  if (options.scope == IoScope::kFullSort) {
    mem.drop_cache();
    mem.reset_stats();
    if (options.algo == Algorithm::kSquareSort)
      square_sort(mem, src, dst, n, params, rng);
    else
      merge_sort_into(mem, src, dst, n);
    rec.io_total = mem.stats().total();

    std::vector<Item> output(n);
    for (std::size_t i = 0; i < n; ++i) output[i] = mem.peek(dst, i);
    require_sorted(input, output, where);
  } else {
    if (options.algo != Algorithm::kSquareSort)
      throw TrialError(where + ": transpose-only scope needs squaresort");
    // Sorted columns of the input become the transpose source.
    const ColumnLayout layout = column_layout(n);
    std::vector<Item> columns = input;
    for (std::size_t i = 0; i < layout.m; ++i)
      std::sort(columns.begin() + static_cast<std::ptrdiff_t>(layout.col[i]),
                columns.begin() +
                    static_cast<std::ptrdiff_t>(layout.col_end[i]));
    for (std::size_t i = 0; i < n; ++i) mem.poke(dst, i, columns[i]);

    const std::size_t m = layout.m;
    ScratchArray<SimMemory> col(mem, m), col_end(mem, m), pivots(mem, m),
        buc(mem, m);
    write_column_layout(mem, n, col.region(), col_end.region());
    const PivotSet ps = sample_pivots(mem, dst, col.region(), col_end.region(),
                                      pivots.region(), rng, params);
    if (ps.degenerate)
      collapse_equal_pivot_runs(mem, pivots.region(), ps.floor);
    initial_bucket_cursors(mem, dst, col.region(), col_end.region(),
                           pivots.region(), buc.region());

    // Native replay of the naive transpose is the oracle for this scope.
    std::vector<Item> ref_src = columns, ref_dst(n, 0);
    std::vector<Item> ref_col(m), ref_end(m), ref_piv(m), ref_buc(m);
    for (std::size_t i = 0; i < m; ++i) {
      ref_col[i] = mem.peek(col.region(), i);
      ref_end[i] = mem.peek(col_end.region(), i);
      ref_piv[i] = mem.peek(pivots.region(), i);
      ref_buc[i] = mem.peek(buc.region(), i);
    }

    mem.drop_cache();
    mem.reset_stats();
    const TransposeFrame<SimMemory::Region> frame{
        col.region(), col_end.region(), pivots.region(), buc.region(), true};
    skew_transpose(mem, dst, src, frame, params);
    rec.io_total = mem.stats().total();

    NativeMemory native;
    const TransposeFrame<NativeMemory::Region> ref_frame{
        NativeMemory::view(ref_col), NativeMemory::view(ref_end),
        NativeMemory::view(ref_piv), NativeMemory::view(ref_buc), true};
    naive_skew_transpose(native, NativeMemory::view(ref_src),
                         NativeMemory::view(ref_dst), ref_frame);
    for (std::size_t i = 0; i < n; ++i)
      if (mem.peek(src, i) != ref_dst[i])
        throw TrialError(where + ": transpose output differs from naive "
                                 "oracle at index " + std::to_string(i));
    for (std::size_t i = 0; i < m; ++i)
      if (mem.peek(buc.region(), i) != ref_buc[i] ||
          mem.peek(col.region(), i) != ref_col[i])
        throw TrialError(where + ": transpose cursors differ from naive "
                                 "oracle at slot " + std::to_string(i));
  }

  if (rec.io_total < 2 * ((n + config.block_cells - 1) / config.block_cells) &&
      options.scope == IoScope::kFullSort)
    throw TrialError(where + ": fewer transfers than reading input and "
                             "writing output requires");
  rec.ratio = io_ratio(rec.io_total, n, config.block_cells, config.cache_cells);
  return rec;
}

std::size_t CacheRule::cache_for(std::size_t block) const {
  switch (kind) {
    case Kind::kSquare: return block * block;
    case Kind::kTallFactor: return value * block * block;
    case Kind::kFixed: return value;
  }
  return 0;
}

CacheRule CacheRule::parse(std::string_view text) {
  auto number = [&](std::string_view digits) {
    std::size_t v = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || v == 0)
      throw std::invalid_argument("bad number in cache rule '" +
                                  std::string(text) + "'");
    return v;
  };
  if (text == "square") return {Kind::kSquare, 1};
  if (text.starts_with("tall:")) return {Kind::kTallFactor, number(text.substr(5))};
  if (text.starts_with("fixed:")) return {Kind::kFixed, number(text.substr(6))};
  throw std::invalid_argument("unknown cache rule '" + std::string(text) +
                              "' (expected square, tall:K or fixed:M)");
}

IoSweepResult io_scaling_sweep(const IoSweepConfig& config) {
  struct Cell {
    std::size_t n;
    extmem::CacheConfig cache;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t b : config.blocks)
    for (std::size_t n : config.sizes)
      for (std::uint64_t seed : config.seeds)
        cells.push_back({n, {config.rule.cache_for(b), b}, seed});

  std::vector<IoRecord> records(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      const Cell& c = cells[i];
      try {
        records[i] = run_io_trial(c.n, c.cache, c.seed, config.params,
                                  config.options);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown failure";
        if (errors[i].find("n=") == std::string::npos)
          errors[i] = cell_name(c.n, c.cache.block_cells, c.cache.cache_cells,
                                c.seed) + ": " + errors[i];
      }
    }
  };
  const std::size_t jobs =
      std::max<std::size_t>(1, std::min(config.jobs, cells.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  IoSweepResult result;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (errors[i].empty()) result.records.push_back(records[i]);
    else result.errors.push_back(std::move(errors[i]));
  }
  return result;
}

std::vector<BenchRecord> cutoff_sweep(const CutoffSweepConfig& config) {
  std::vector<BenchRecord> out;
  for (std::size_t cutoff : config.cutoffs) {
    SortParams params = config.params;
    params.cutoff = cutoff;
    params.validate();
    for (std::size_t n : config.sizes)
      out.push_back(run_time_trials(Algorithm::kSquareSort, config.dist, n,
                                    config.seeds, params, config.repeats));
  }
  return out;
}

}  // namespace squaresort::bench

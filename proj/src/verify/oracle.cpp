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

#include "squaresort/verify/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>

#include "squaresort/layout.hpp"
#include "squaresort/memory.hpp"
#include "squaresort/square_sort.hpp"

namespace squaresort::verify {

namespace {

// LSD radix sort on the order-preserving unsigned image of each key. It
// shares no code with the sorts under test. All digit histograms come from
// one pass; passes where every key has the same digit are skipped.
std::vector<Item> radix_sorted(std::span<const Item> input) {
  constexpr unsigned kBits = 11;
  constexpr unsigned kPasses = (64 + kBits - 1) / kBits;
  constexpr std::size_t kRadix = std::size_t{1} << kBits;
  constexpr std::uint64_t kSign = std::uint64_t{1} << 63;
  const std::size_t n = input.size();
  std::vector<std::uint64_t> a(n), b(n);
  std::vector<std::size_t> count(kPasses * kRadix, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t x = static_cast<std::uint64_t>(input[i]) ^ kSign;
    a[i] = x;
    for (unsigned p = 0; p < kPasses; ++p)
      ++count[p * kRadix + ((x >> (p * kBits)) & (kRadix - 1))];
  }
  for (unsigned p = 0; p < kPasses && n > 0; ++p) {
    std::size_t* c = count.data() + p * kRadix;
    const unsigned shift = p * kBits;
    if (c[(a[0] >> shift) & (kRadix - 1)] == n) continue;
    std::size_t sum = 0;
    for (std::size_t d = 0; d < kRadix; ++d) sum += std::exchange(c[d], sum);
    for (std::uint64_t x : a) b[c[(x >> shift) & (kRadix - 1)]++] = x;
    a.swap(b);
  }
  std::vector<Item> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Item>(a[i] ^ kSign);
  return out;
}

}  // namespace

CheckResult check_sorted_permutation(std::span<const Item> input,
                                     std::span<const Item> output) {
  CheckResult r;
  if (input.size() != output.size()) {
    r.ok = false;
    r.reason = "length mismatch: input has " + std::to_string(input.size()) +
               " items, output " + std::to_string(output.size());
    return r;
  }
  for (std::size_t i = 1; i < output.size(); ++i) {
    if (output[i] < output[i - 1]) {
      r.ok = false;
      r.index = i;
      r.reason = "order violation at index " + std::to_string(i) + " (" +
                 std::to_string(output[i - 1]) + " > " +
                 std::to_string(output[i]) + ")";
      return r;
    }
  }
  const std::vector<Item> reference = radix_sorted(input);
  const auto [a, b] =
      std::mismatch(reference.begin(), reference.end(), output.begin());
  if (a != reference.end()) {
    r.ok = false;
    r.index = static_cast<std::size_t>(a - reference.begin());
    r.reason = "multiset mismatch at sorted position " +
               std::to_string(r.index) + " (expected " + std::to_string(*a) +
               ", got " + std::to_string(*b) + ")";
  }
  return r;
}

std::vector<Item> count_bucket_starts(std::span<const Item> items,
                                      std::span<const Item> pivots) {
  std::vector<Item> starts(pivots.size(), 0);
  for (std::size_t j = 1; j < pivots.size(); ++j)
    starts[j] = static_cast<Item>(std::count_if(
        items.begin(), items.end(),
        [&](Item x) { return x < pivots[j - 1]; }));
  return starts;
}

TransposeInstance random_transpose_instance(Rng& rng, std::size_t max_n) {
  TransposeInstance inst;
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_n));
  const ColumnLayout layout = column_layout(n);
  const std::size_t m = layout.m;

  static constexpr Item kRanges[] = {4, 0, Item{1} << 40};
  Item range = kRanges[rng.below(3)];
  if (range == 0) range = static_cast<Item>(n);

  inst.src.resize(n);
  for (auto& x : inst.src)
    x = 1 + static_cast<Item>(rng.below(static_cast<std::uint64_t>(range)));
  for (std::size_t i = 0; i < m; ++i)
    std::sort(inst.src.begin() + static_cast<std::ptrdiff_t>(layout.col[i]),
              inst.src.begin() + static_cast<std::ptrdiff_t>(layout.col_end[i]));

  inst.col.assign(layout.col.begin(), layout.col.end());
  inst.col_end.assign(layout.col_end.begin(), layout.col_end.end());

  const std::uint64_t shape = rng.below(20);
  if (shape == 0) {
    inst.pivots = {kItemMax};  // a single bucket
  } else if (shape == 1) {
    inst.pivots.resize(m);  // everything falls into the first bucket
    for (std::size_t j = 0; j + 1 < m; ++j)
      inst.pivots[j] = range + 2 + static_cast<Item>(j);
    inst.pivots[m - 1] = kItemMax;
  } else {
    inst.pivots.resize(m);
    for (std::size_t j = 0; j + 1 < m; ++j)
      inst.pivots[j] =
          1 + static_cast<Item>(rng.below(static_cast<std::uint64_t>(range) + 1));
    std::sort(inst.pivots.begin(), inst.pivots.end() - 1);
    inst.pivots[m - 1] = kItemMax;
  }
  inst.open_top = true;
  inst.buc = count_bucket_starts(inst.src, inst.pivots);
  return inst;
}

namespace {

template <class Run>
TransposeOutcome run_transpose(const TransposeInstance& inst, Run&& run) {
  TransposeOutcome out;
  std::vector<Item> src = inst.src;
  std::vector<Item> col_end = inst.col_end;
  std::vector<Item> pivots = inst.pivots;
  out.dst.assign(src.size(), Item{-1});
  out.col = inst.col;
  out.buc = inst.buc;
  NativeMemory mem;
  const TransposeFrame<NativeMemory::Region> frame{
      NativeMemory::view(out.col), NativeMemory::view(col_end),
      NativeMemory::view(pivots), NativeMemory::view(out.buc), inst.open_top};
  run(mem, NativeMemory::view(src), NativeMemory::view(out.dst), frame,
      out.probe);
  return out;
}

}  // namespace

TransposeOutcome run_naive(const TransposeInstance& inst) {
  return run_transpose(inst, [](NativeMemory& mem, auto src, auto dst,
                                const auto& frame, TransposeProbe&) {
    naive_skew_transpose(mem, src, dst, frame);
  });
}

TransposeOutcome run_recursive(const TransposeInstance& inst,
                               std::size_t threshold) {
  SortParams params;
  params.naive_threshold = threshold;
  return run_transpose(inst, [&](NativeMemory& mem, auto src, auto dst,
                                 const auto& frame, TransposeProbe& probe) {
    skew_transpose(mem, src, dst, frame, params, &probe);
  });
}

TransposeReport transpose_equivalence_test(std::size_t trials,
                                           std::size_t max_n,
                                           std::uint64_t seed) {
  TransposeReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = split_seed(seed, t);
    Rng rng(trial_seed);
    const TransposeInstance inst = random_transpose_instance(rng, max_n);
    const std::size_t threshold = 2 + static_cast<std::size_t>(rng.below(4));
    const TransposeOutcome naive = run_naive(inst);
    const TransposeOutcome rec = run_recursive(inst, threshold);

    ++report.trials;
    if (rec.probe.calls > 1) ++report.recursive_trials;
    if (inst.pivots.size() == inst.col.size())
      report.max_imbalance =
          std::max(report.max_imbalance, rec.probe.max_imbalance);

    std::string problem;
    if (naive.dst != rec.dst) problem = "destination differs";
    else if (naive.col != rec.col) problem = "column cursors differ";
    else if (naive.buc != rec.buc) problem = "bucket cursors differ";
    else if (naive.col != inst.col_end) problem = "columns not fully consumed";
    else {
      Item moved = 0;
      for (std::size_t j = 0; j < naive.buc.size(); ++j)
        moved += naive.buc[j] - inst.buc[j];
      if (moved != static_cast<Item>(inst.src.size()))
        problem = "cursor advance does not sum to n";
    }
    if (!problem.empty()) {
      ++report.failures;
      report.failing_seeds.push_back(trial_seed);
      report.messages.push_back("trial " + std::to_string(t) + " (seed " +
                                std::to_string(trial_seed) + ", n=" +
                                std::to_string(inst.src.size()) +
                                ", threshold=" + std::to_string(threshold) +
                                "): " + problem);
    }
  }
  return report;
}

CorrectnessReport correctness_suite(std::span<const bench::Distribution> dists,
                                    std::span<const std::size_t> sizes,
                                    std::size_t instances, std::uint64_t seed,
                                    const SortParams& params) {
  CorrectnessReport report;
  std::uint64_t counter = 0;
  // Reused across instances so large runs do not fault in fresh pages.
  std::vector<Item> scratch, output;
  for (bench::Distribution dist : dists) {
    for (std::size_t n : sizes) {
      for (std::size_t i = 0; i < instances; ++i) {
        const std::uint64_t s = split_seed(seed, counter++);
        const std::vector<Item> input = bench::generate_input(dist, n, s);
        scratch.assign(input.begin(), input.end());
        output.resize(n);
        NativeMemory mem;
        Rng rng(s);
        square_sort(mem, NativeMemory::view(scratch), NativeMemory::view(output),
                    n, params, rng);
        ++report.runs;
        const CheckResult check = check_sorted_permutation(input, output);
        if (!check.ok) {
          if (report.failures == 0)
            report.first_failure = std::string(bench::to_string(dist)) +
                                   " n=" + std::to_string(n) + " seed=" +
                                   std::to_string(s) + ": " + check.reason;
          ++report.failures;
        }
      }
    }
  }
  return report;
}

SpaceReport peak_auxiliary_space(std::size_t n, std::uint64_t seed,
                                 const SortParams& params,
                                 bench::Distribution dist) {
  const std::vector<Item> input = bench::generate_input(dist, n, seed);
  std::vector<Item> src = input, dst(n);
  NativeMemory mem;
  Rng rng(seed);
  square_sort(mem, NativeMemory::view(src), NativeMemory::view(dst), n, params,
              rng);
  const CheckResult check = check_sorted_permutation(input, dst);
  if (!check.ok)
    throw std::runtime_error("space run produced wrong output: " +
                             check.reason);
  SpaceReport report;
  report.n = n;
  report.peak_cells = mem.peak_cells();
  return report;
}

}  // namespace squaresort::verify

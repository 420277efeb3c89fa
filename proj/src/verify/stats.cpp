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

#include "squaresort/verify/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "squaresort/bench/distributions.hpp"
#include "squaresort/layout.hpp"
#include "squaresort/memory.hpp"
#include "squaresort/pivots.hpp"

namespace squaresort::verify {

namespace {

using std::numbers::e;

double binomial_sigma(double p, std::size_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

// The layout arrays of an n-item buffer, as cells.
struct Columns {
  std::vector<Item> col, col_end;
  explicit Columns(std::size_t n) {
    const ColumnLayout layout = column_layout(n);
    col.assign(layout.col.begin(), layout.col.end());
    col_end.assign(layout.col_end.begin(), layout.col_end.end());
  }
};

}  // namespace

double upper_tail_bound(double t) { return std::exp(-0.9 * t + 0.1); }

double lower_tail_bound(double s, std::size_t n) {
  return e * e * s / std::sqrt(static_cast<double>(n));
}

double entropy_bound(std::size_t n) {
  const double dn = static_cast<double>(n);
  return 0.5 * dn * std::log2(dn) + 4.0 * e * dn;
}

bool TailReport::all_pass() const {
  if (trials == 0 || !entropy_pass) return false;
  for (const TailCheck& c : upper)
    if (!c.pass) return false;
  for (const TailCheck& c : lower)
    if (!c.pass) return false;
  return true;
}

TailReport bucket_tail_stats(std::size_t n, std::size_t trials,
                             std::uint64_t seed, std::span<const double> ts,
                             std::span<const double> ss) {
  if (n < 100) throw std::invalid_argument("bucket_tail_stats needs n >= 100");
  if (trials < 1000)
    throw std::invalid_argument("bucket_tail_stats needs >= 1000 trials");

  // Distinct items in sorted order: every column is sorted, and item values
  // coincide with ranks.
  std::vector<Item> items(n);
  for (std::size_t i = 0; i < n; ++i) items[i] = static_cast<Item>(i);
  Columns cols(n);
  const std::size_t m = cols.col.size();
  std::vector<Item> pivots(m), buc(m);

  NativeMemory mem;
  const auto v_items = NativeMemory::view(items);
  const auto v_col = NativeMemory::view(cols.col);
  const auto v_end = NativeMemory::view(cols.col_end);
  const auto v_piv = NativeMemory::view(pivots);
  const auto v_buc = NativeMemory::view(buc);
  const SortParams params;

  const double root = std::sqrt(static_cast<double>(n));
  std::vector<std::size_t> upper_hits(ts.size(), 0), lower_hits(ss.size(), 0);
  double ent_sum = 0, ent_sq = 0, rounds_sum = 0;

  TailReport report;
  report.n = n;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(split_seed(seed, t));
    const PivotSet ps =
        sample_pivots(mem, v_items, v_col, v_end, v_piv, rng, params);
    rounds_sum += static_cast<double>(ps.rounds);
    if (ps.degenerate) {
      ++report.aborted;
      continue;
    }
    initial_bucket_cursors(mem, v_items, v_col, v_end, v_piv, v_buc);

    double entropy = 0;
    Item total = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const Item size = (j + 1 < m ? buc[j + 1] : static_cast<Item>(n)) - buc[j];
      total += size;
      if (size > 1) {
        const double s = static_cast<double>(size);
        entropy += s * std::log2(s);
      }
    }
    if (total != static_cast<Item>(n))
      throw std::logic_error("bucket sizes do not partition the items");

    const double first = static_cast<double>(buc[1] - buc[0]);
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (first >= ts[i] * root) ++upper_hits[i];
    for (std::size_t i = 0; i < ss.size(); ++i)
      if (first <= ss[i]) ++lower_hits[i];
    ent_sum += entropy;
    ent_sq += entropy * entropy;
    ++report.trials;
  }

  const std::size_t done = report.trials;
  report.mean_rounds = rounds_sum / static_cast<double>(trials);
  if (done == 0) return report;

  auto make = [&](double param, std::size_t hits, double bound) {
    TailCheck c;
    c.parameter = param;
    c.hits = hits;
    c.frequency = static_cast<double>(hits) / static_cast<double>(done);
    c.bound = bound;
    c.sigma = binomial_sigma(c.frequency, done);
    c.pass = c.frequency <= c.bound + kSlackSigmas * c.sigma;
    return c;
  };
  for (std::size_t i = 0; i < ts.size(); ++i)
    report.upper.push_back(make(ts[i], upper_hits[i], upper_tail_bound(ts[i])));
  for (std::size_t i = 0; i < ss.size(); ++i)
    report.lower.push_back(
        make(ss[i], lower_hits[i], lower_tail_bound(ss[i], n)));

  const double dd = static_cast<double>(done);
  report.entropy_mean = ent_sum / dd;
  const double var =
      done > 1 ? std::max(0.0, (ent_sq - dd * report.entropy_mean *
                                              report.entropy_mean) /
                                   (dd - 1))
               : 0.0;
  report.entropy_stderr = std::sqrt(var / dd);
  report.entropy_bound = entropy_bound(n);
  report.entropy_pass = report.entropy_mean <=
                        report.entropy_bound + kSlackSigmas * report.entropy_stderr;
  return report;
}

RoundsReport pivot_round_stats(std::size_t n, std::size_t runs,
                               std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("pivot_round_stats needs n >= 2");
  Columns cols(n);
  const std::size_t m = cols.col.size();
  std::vector<Item> pivots(m);
  NativeMemory mem;
  const SortParams params;

  RoundsReport report;
  report.bound = e * e;
  double sum = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t s = split_seed(seed, r);
    std::vector<Item> items =
        bench::generate_input(bench::Distribution::kPermutation, n, s);
    for (std::size_t i = 0; i < m; ++i)
      std::sort(items.begin() + cols.col[i], items.begin() + cols.col_end[i]);
    Rng rng(s);
    const PivotSet ps = sample_pivots(
        mem, NativeMemory::view(items), NativeMemory::view(cols.col),
        NativeMemory::view(cols.col_end), NativeMemory::view(pivots), rng,
        params);
    sum += static_cast<double>(ps.rounds);
    report.max_rounds = std::max(report.max_rounds, ps.rounds);
    if (ps.degenerate) ++report.degenerate;
    ++report.runs;
  }
  if (report.runs) report.mean_rounds = sum / static_cast<double>(report.runs);
  return report;
}

std::vector<IoFit> fit_io_values(std::span<const bench::IoRecord> records,
                                 double (*value)(const bench::IoRecord&)) {
  std::vector<IoFit> fits;
  std::vector<std::set<std::size_t>> sizes;
  std::vector<std::size_t> counts;
  for (const bench::IoRecord& r : records) {
    auto it = std::find_if(fits.begin(), fits.end(), [&](const IoFit& f) {
      return f.block == r.block && f.cache == r.cache;
    });
    const double v = value(r);
    if (it == fits.end()) {
      IoFit f;
      f.block = r.block;
      f.cache = r.cache;
      f.ratio_min = f.ratio_max = v;
      fits.push_back(f);
      sizes.emplace_back();
      counts.push_back(0);
      it = fits.end() - 1;
    }
    const std::size_t g = static_cast<std::size_t>(it - fits.begin());
    it->ratio_min = std::min(it->ratio_min, v);
    it->ratio_max = std::max(it->ratio_max, v);
    it->ratio_mean += v;
    sizes[g].insert(r.size);
    ++counts[g];
  }
  for (std::size_t g = 0; g < fits.size(); ++g) {
    fits[g].ratio_mean /= static_cast<double>(counts[g]);
    fits[g].distinct_sizes = sizes[g].size();
    fits[g].enough_sizes = fits[g].distinct_sizes >= 3;
    if (!fits[g].enough_sizes)
      fits[g].note = "only " + std::to_string(fits[g].distinct_sizes) +
                     " distinct sizes (need 3)";
  }
  return fits;
}

std::vector<IoFit> fit_io_constant(std::span<const bench::IoRecord> records) {
  return fit_io_values(records,
                       [](const bench::IoRecord& r) { return r.ratio; });
}

}  // namespace squaresort::verify

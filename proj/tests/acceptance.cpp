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

// Acceptance run: ten criteria, one PASS/FAIL line each.
//
//   acceptance [--only N[,N...]] [--strict]
//
// Exit status is nonzero when any criterion fails, except a transpose-IO
// failure whose cause is confined to cache-resident sizes (see README,
// "Known result"). --strict removes that exception.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "squaresort/bench/csv.hpp"
#include "squaresort/bench/distributions.hpp"
#include "squaresort/bench/trials.hpp"
#include "squaresort/verify/oracle.hpp"
#include "squaresort/verify/stats.hpp"

#ifndef SQUARESORT_BENCH_PATH
#error "SQUARESORT_BENCH_PATH must name the squaresort-bench executable"
#endif

namespace fs = std::filesystem;
using namespace squaresort;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 20260;

struct Outcome {
  bool pass = false;
  bool excused = false;  // failed, but only in the documented way
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

std::vector<std::size_t> powers_of_two(unsigned lo, unsigned hi) {
  std::vector<std::size_t> v;
  for (unsigned k = lo; k <= hi; ++k) v.push_back(std::size_t{1} << k);
  return v;
}

bench::IoSweepConfig acceptance_grid(bench::IoScope scope) {
  bench::IoSweepConfig cfg;
  cfg.sizes = powers_of_two(10, 20);
  cfg.blocks = {16, 32, 64};
  cfg.rule = bench::CacheRule::parse("square");
  cfg.seeds = {1, 2, 3};
  cfg.options.scope = scope;
  return cfg;
}

double per_linear_block(const bench::IoRecord& r) {
  return static_cast<double>(r.io_total) /
         (1.0 + static_cast<double>(r.size) / static_cast<double>(r.block));
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + SQUARESORT_BENCH_PATH + "\" " +
                          args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// ---------------------------------------------------------------------------

Outcome correctness() {
  const auto t0 = Clock::now();
  const std::size_t sizes[] = {100, 1000, 10000, 100000, 1000000};
  const auto r = verify::correctness_suite(bench::kAllDistributions, sizes, 200,
                                           kSeed, SortParams{});
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = r.ok() && r.runs == 4 * 5 * 200 && secs < 300;
  o.detail = std::to_string(r.runs) + " runs, " + std::to_string(r.failures) +
             " failures, " + fmt(secs) + " s (budget 300 s)";
  if (!r.ok()) o.detail += "; " + r.first_failure;
  return o;
}

Outcome transpose_equivalence() {
  const auto t0 = Clock::now();
  const auto r = verify::transpose_equivalence_test(1000, 4096, kSeed);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = r.failures == 0 && r.trials == 1000 && secs < 60;
  o.detail = std::to_string(r.trials) + " instances, " +
             std::to_string(r.failures) + " mismatches, " + fmt(secs) + " s";
  for (std::size_t i = 0; i < r.messages.size() && i < 3; ++i)
    o.detail += "; " + r.messages[i];
  return o;
}

Outcome transpose_io() {
  const auto t0 = Clock::now();
  const auto res = bench::io_scaling_sweep(acceptance_grid(bench::IoScope::kTransposeOnly));
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = res.errors.empty() && secs < 600;
  bool excusable = res.errors.empty() && secs < 600;
  std::ostringstream d;
  for (const auto& f : verify::fit_io_values(res.records, per_linear_block)) {
    const bool ok = f.enough_sizes && f.spread() <= 2.0;
    o.pass = o.pass && ok;
    d << "B=" << f.block << " spread " << fmt(f.spread());
    if (!ok) {
      // Restrict to sizes that exceed the cache; the excuse holds only if
      // those stay within the factor.
      std::vector<bench::IoRecord> large;
      for (const auto& r : res.records)
        if (r.block == f.block && r.size > f.cache) large.push_back(r);
      const auto sub = verify::fit_io_values(large, per_linear_block);
      const bool large_ok =
          sub.size() == 1 && sub[0].enough_sizes && sub[0].spread() <= 2.0;
      excusable = excusable && large_ok;
      d << " (n > M only: "
        << (sub.empty() ? std::string("none") : fmt(sub[0].spread())) << ")";
    }
    d << "; ";
  }
  d << res.records.size() << " cells, " << fmt(secs) << " s";
  for (const auto& e : res.errors) d << "; " << e;
  o.excused = !o.pass && excusable;
  o.detail = d.str();
  return o;
}

Outcome full_sort_io() {
  const auto t0 = Clock::now();
  const auto res = bench::io_scaling_sweep(acceptance_grid(bench::IoScope::kFullSort));
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = res.errors.empty() && secs < 1800;
  std::ostringstream d;
  for (const auto& r : res.records) {
    const std::uint64_t floor = 2 * ((r.size + r.block - 1) / r.block);
    if (r.io_total < floor) {
      o.pass = false;
      d << "n=" << r.size << " B=" << r.block << " io " << r.io_total
        << " below " << floor << "; ";
    }
  }
  for (const auto& f : verify::fit_io_constant(res.records)) {
    o.pass = o.pass && f.enough_sizes && f.spread() <= 4.0;
    d << "B=" << f.block << " ratio " << fmt(f.ratio_min) << ".." << fmt(f.ratio_max)
      << " spread " << fmt(f.spread()) << "; ";
  }
  d << res.records.size() << " cells, " << fmt(secs) << " s";
  for (const auto& e : res.errors) d << "; " << e;
  o.detail = d.str();
  return o;
}

// Criteria 5 and 6 share one run.
const verify::TailReport& tail_report(double* secs) {
  static double elapsed = 0;
  static const verify::TailReport report = [] {
    const auto t0 = Clock::now();
    auto r = verify::bucket_tail_stats(10000, 10000, kSeed);
    elapsed = seconds_since(t0);
    return r;
  }();
  *secs = elapsed;
  return report;
}

Outcome tail_bounds() {
  double secs = 0;
  const auto& r = tail_report(&secs);
  Outcome o;
  o.pass = r.trials + r.aborted == 10000 && secs < 300;
  std::ostringstream d;
  for (const auto& c : r.upper) {
    o.pass = o.pass && c.pass;
    d << "t=" << c.parameter << ": " << fmt(c.frequency) << " <= " << fmt(c.bound)
      << "+3*" << fmt(c.sigma, 2) << (c.pass ? "" : " FAILED") << "; ";
  }
  for (const auto& c : r.lower) {
    o.pass = o.pass && c.pass;
    d << "s=" << c.parameter << ": " << fmt(c.frequency) << " <= " << fmt(c.bound)
      << "+3*" << fmt(c.sigma, 2) << (c.pass ? "" : " FAILED") << "; ";
  }
  d << r.aborted << " aborted, " << fmt(secs) << " s";
  o.detail = d.str();
  return o;
}

Outcome entropy() {
  double secs = 0;
  const auto& r = tail_report(&secs);
  Outcome o;
  o.pass = r.entropy_pass && secs < 300;
  o.detail = "mean " + fmt(r.entropy_mean, 7) + " (stderr " +
             fmt(r.entropy_stderr, 3) + ") vs bound " +
             fmt(r.entropy_bound, 7) + ", " + std::to_string(r.trials) + " trials";
  return o;
}

Outcome pivot_rounds() {
  const auto t0 = Clock::now();
  const auto r = verify::pivot_round_stats(10000, 10000, kSeed);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = r.pass() && r.runs == 10000 && secs < 120;
  o.detail = "mean " + fmt(r.mean_rounds) + " <= " + fmt(r.bound) + ", max " +
             std::to_string(r.max_rounds) + ", " + fmt(secs) + " s";
  return o;
}

Outcome space() {
  const auto t0 = Clock::now();
  Outcome o;
  o.pass = true;
  double worst = 0;
  std::size_t runs = 0;
  for (std::size_t n : {1000, 10000, 100000, 1000000}) {
    for (bench::Distribution dist : bench::kAllDistributions) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto r = verify::peak_auxiliary_space(n, seed, SortParams{}, dist);
        ++runs;
        o.pass = o.pass && r.ok();
        worst = std::max(worst, static_cast<double>(r.peak_cells) / static_cast<double>(n));
      }
    }
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 120;
  o.detail = std::to_string(runs) + " runs, worst " + fmt(worst) +
             " cells per item (envelope 10), " + fmt(secs) + " s";
  return o;
}

Outcome determinism(const fs::path& dir) {
  const auto t0 = Clock::now();
  const std::string flags =
      "iosweep --sizes 2^10..2^16 --blocks 16,32,64 --cache-rule square "
      "--scope full-sort --seeds 1,2 --jobs 1";
  const fs::path a = dir / "det-a.csv", b = dir / "det-b.csv";
  const int ra = run_cli(flags + " --out \"" + a.string() + "\"", dir / "det-a.log");
  const int rb = run_cli(flags + " --out \"" + b.string() + "\"", dir / "det-b.log");
  const std::string sa = slurp(a), sb = slurp(b);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = ra == 0 && rb == 0 && !sa.empty() && sa == sb && secs < 300;
  o.detail = "exit " + std::to_string(ra) + "/" + std::to_string(rb) + ", " +
             std::to_string(sa.size()) + " bytes, " +
             (sa == sb ? "identical" : "different") + ", " + fmt(secs) + " s";
  return o;
}

Outcome reproduction(const fs::path& dir) {
  const auto t0 = Clock::now();
  const std::vector<std::string> dists = {"permutation", "binary", "uniform-full",
                                          "uniform-sqrt"};
  const std::vector<std::size_t> sizes = {1000, 10000, 100000, 1000000, 10000000};
  const std::vector<std::size_t> cutoffs = {100, 256, 493, 958};
  Outcome o;
  o.pass = true;
  std::size_t files = 0, rows = 0;
  std::ostringstream d;

  auto check_file = [&](const fs::path& p) {
    try {
      const auto recs = bench::read_bench_csv(p);
      bool ok = recs.size() == sizes.size();
      for (std::size_t i = 0; ok && i < recs.size(); ++i) {
        ok = recs[i].size == sizes[i] && recs[i].time_ns > 0 &&
             std::abs(recs[i].norm - bench::normalized_time(recs[i].time_ns, recs[i].size)) <=
                 1e-9 * recs[i].norm;
      }
      ++files;
      rows += recs.size();
      if (!ok) {
        o.pass = false;
        d << p.filename().string() << " malformed; ";
      }
    } catch (const std::exception& e) {
      o.pass = false;
      d << e.what() << "; ";
    }
  };

  const int rb = run_cli("bench --algo squaresort --dist permutation,binary,"
                         "uniform-full,uniform-sqrt --sizes 1e3..1e7 --out \"" +
                             (dir / "bench.csv").string() + "\"",
                         dir / "bench.log");
  if (rb != 0) {
    o.pass = false;
    d << "bench exit " << rb << "; ";
  }
  for (const auto& dist : dists)
    check_file(dir / ("bench-squaresort-" + dist + ".csv"));

  for (const auto& dist : dists) {
    const fs::path stem = dir / ("cutoff-" + dist + ".csv");
    const int rc = run_cli("cutoff-sweep --cutoffs 100,256,493,958 --dist " + dist +
                               " --sizes 1e3..1e7 --out \"" + stem.string() + "\"",
                           dir / ("cutoff-" + dist + ".log"));
    if (rc != 0) {
      o.pass = false;
      d << "cutoff-sweep " << dist << " exit " << rc << "; ";
    }
    for (std::size_t c : cutoffs)
      check_file(dir / ("cutoff-" + dist + "-cutoff=" + std::to_string(c) + ".csv"));
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && files == 20 && secs < 1800;
  d << files << " files, " << rows << " rows, " << fmt(secs) << " s";
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--strict") {
      strict = true;
    } else if (arg == "--only" && i + 1 < argc) {
      std::stringstream list(argv[++i]);
      for (std::string tok; std::getline(list, tok, ',');) only.insert(std::stoi(tok));
    } else {
      std::cerr << "usage: acceptance [--only N[,N...]] [--strict]\n";
      return 2;
    }
  }

  const fs::path dir = fs::temp_directory_path() /
                       ("squaresort-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"correctness", correctness},
      {"transpose equivalence", transpose_equivalence},
      {"transpose IO linearity", transpose_io},
      {"full-sort IO scaling", full_sort_io},
      {"bucket tail bounds", tail_bounds},
      {"entropy statistic", entropy},
      {"pivot resampling rounds", pivot_rounds},
      {"space linearity", space},
      {"iosweep determinism", [&] { return determinism(dir); }},
      {"experiment reproduction", [&] { return reproduction(dir); }},
  };

  int failed = 0, excused = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.excused = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << "CRITERION " << id << ' ' << (o.pass ? "PASS" : "FAIL") << ' '
              << criteria[i].first << ": " << o.detail << '\n'
              << std::flush;
    if (!o.pass) {
      if (o.excused && !strict)
        ++excused;
      else
        ++failed;
    }
  }
  fs::remove_all(dir);
  if (excused)
    std::cout << excused
              << " failure(s) limited to cache-resident sizes; see README\n";
  return failed == 0 ? 0 : 1;
}

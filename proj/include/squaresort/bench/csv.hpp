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

// Space-separated measurement tables, one header line then one row per
// record:
//
//   timing:  size time_ns norm
//   io:      size B M io ratio seed
//
// Floating-point columns use the shortest representation that parses back
// to the same double.

#ifndef SQUARESORT_BENCH_CSV_HPP_
#define SQUARESORT_BENCH_CSV_HPP_

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "squaresort/bench/trials.hpp"

namespace squaresort::bench {

inline constexpr const char* kBenchHeader = "size time_ns norm";
inline constexpr const char* kIoHeader = "size B M io ratio seed";

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);
void write_io_csv(std::ostream& out, std::span<const IoRecord> records);

/// File variants; failures throw std::runtime_error naming the path.
void emit_csv(std::span<const BenchRecord> records,
              const std::filesystem::path& path);
void emit_csv(std::span<const IoRecord> records,
              const std::filesystem::path& path);

/// Parsed rows of a timing table. Only the three emitted columns are
/// recovered.
std::vector<BenchRecord> read_bench_csv(const std::filesystem::path& path);
std::vector<IoRecord> read_io_csv(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace squaresort::bench

#endif  // SQUARESORT_BENCH_CSV_HPP_

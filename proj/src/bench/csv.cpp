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

#include "squaresort/bench/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace squaresort::bench {

namespace {

std::runtime_error file_error(const std::filesystem::path& path,
                              const std::string& what) {
  return std::runtime_error(path.string() + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  for (std::string f; in >> f;) fields.push_back(f);
  return fields;
}

template <class T>
T parse_field(const std::string& text, const std::filesystem::path& path,
              std::size_t line_no) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw file_error(path, "line " + std::to_string(line_no) +
                               ": malformed field '" + text + "'");
  return v;
}

std::vector<std::vector<std::string>> read_table(
    const std::filesystem::path& path, const char* header,
    std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw file_error(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line)) throw file_error(path, "missing header line");
  if (line != header)
    throw file_error(path, "unexpected header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != columns)
      throw file_error(path, "line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(columns) + " fields, got " +
                                 std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }
  return rows;
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw file_error(path, "cannot open for writing");
  writer(out);
  out.flush();
  if (!out) throw file_error(path, "write failed");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kBenchHeader << '\n';
  for (const BenchRecord& r : records)
    out << r.size << ' ' << format_double(r.time_ns) << ' '
        << format_double(r.norm) << '\n';
}

void write_io_csv(std::ostream& out, std::span<const IoRecord> records) {
  out << kIoHeader << '\n';
  for (const IoRecord& r : records)
    out << r.size << ' ' << r.block << ' ' << r.cache << ' ' << r.io_total
        << ' ' << format_double(r.ratio) << ' ' << r.seed << '\n';
}

void emit_csv(std::span<const BenchRecord> records,
              const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_bench_csv(out, records); });
}

void emit_csv(std::span<const IoRecord> records,
              const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_io_csv(out, records); });
}

std::vector<BenchRecord> read_bench_csv(const std::filesystem::path& path) {
  std::vector<BenchRecord> out;
  std::size_t line_no = 1;
  for (const auto& f : read_table(path, kBenchHeader, 3)) {
    ++line_no;
    BenchRecord r;
    r.size = parse_field<std::size_t>(f[0], path, line_no);
    r.time_ns = parse_field<double>(f[1], path, line_no);
    r.norm = parse_field<double>(f[2], path, line_no);
    out.push_back(r);
  }
  return out;
}

std::vector<IoRecord> read_io_csv(const std::filesystem::path& path) {
  std::vector<IoRecord> out;
  std::size_t line_no = 1;
  for (const auto& f : read_table(path, kIoHeader, 6)) {
    ++line_no;
    IoRecord r;
    r.size = parse_field<std::size_t>(f[0], path, line_no);
    r.block = parse_field<std::size_t>(f[1], path, line_no);
    r.cache = parse_field<std::size_t>(f[2], path, line_no);
    r.io_total = parse_field<std::uint64_t>(f[3], path, line_no);
    r.ratio = parse_field<double>(f[4], path, line_no);
    r.seed = parse_field<std::uint64_t>(f[5], path, line_no);
    out.push_back(r);
  }
  return out;
}

}  // namespace squaresort::bench

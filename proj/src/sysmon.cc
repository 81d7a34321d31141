/* Copyright 2026 The picobench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "picobench/sysmon.h"

#include <array>
#include <chrono>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "picobench/error.h"

namespace picobench {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kCounterSourceUnavailable,
                "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_u64(std::string_view s, uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

uint64_t CpuSnapshot::total() const {
  return user + nice + system + idle + iowait + irq + softirq + steal;
}

CounterSource CounterSource::from_environment() {
  CounterSource source;
  if (const char* p = std::getenv("PICO_CPU_STAT_PATH"); p && *p) {
    source.cpu_stat_path = p;
  }
  if (const char* p = std::getenv("PICO_MEMINFO_PATH"); p && *p) {
    source.meminfo_path = p;
  }
  return source;
}

int64_t monotonic_now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

CpuSnapshot parse_cpu_stat(std::string_view contents) {
  size_t pos = 0;
  while (pos < contents.size()) {
    size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;

    auto fields = split_ws(line);
    if (fields.empty() || fields[0] != "cpu") continue;
    if (fields.size() < 5) {
      throw Error(ErrorCode::kCounterSourceUnavailable,
                  "aggregate cpu line has fewer than 4 counters");
    }
    std::array<uint64_t, 8> ticks{};
    for (size_t k = 0; k < ticks.size() && k + 1 < fields.size(); ++k) {
      if (!parse_u64(fields[k + 1], ticks[k])) {
        throw Error(ErrorCode::kCounterSourceUnavailable,
                    "unparsable tick count '" + std::string(fields[k + 1]) +
                        "'");
      }
    }
    CpuSnapshot s;
    s.user = ticks[0];
    s.nice = ticks[1];
    s.system = ticks[2];
    s.idle = ticks[3];
    s.iowait = ticks[4];
    s.irq = ticks[5];
    s.softirq = ticks[6];
    s.steal = ticks[7];
    s.timestamp_ns = monotonic_now_ns();
    return s;
  }
  throw Error(ErrorCode::kCounterSourceUnavailable, "no aggregate cpu line");
}

std::string format_cpu_line(const CpuSnapshot& s) {
  std::ostringstream out;
  out << "cpu  " << s.user << ' ' << s.nice << ' ' << s.system << ' ' << s.idle
      << ' ' << s.iowait << ' ' << s.irq << ' ' << s.softirq << ' ' << s.steal;
  return out.str();
}

MemSnapshot parse_meminfo(std::string_view contents) {
  std::optional<uint64_t> total, available, free, buffers, cached;
  size_t pos = 0;
  while (pos < contents.size()) {
    size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    auto fields = split_ws(contents.substr(pos, end - pos));
    pos = end + 1;
    if (fields.size() < 2) continue;
    uint64_t value = 0;
    if (!parse_u64(fields[1], value)) continue;
    if (fields[0] == "MemTotal:") total = value;
    else if (fields[0] == "MemAvailable:") available = value;
    else if (fields[0] == "MemFree:") free = value;
    else if (fields[0] == "Buffers:") buffers = value;
    else if (fields[0] == "Cached:") cached = value;
  }
  if (!total || *total == 0) {
    throw Error(ErrorCode::kCounterSourceUnavailable, "MemTotal missing");
  }
  // Kernels before 3.14 lack MemAvailable.
  if (!available) {
    if (!free) {
      throw Error(ErrorCode::kCounterSourceUnavailable,
                  "neither MemAvailable nor MemFree present");
    }
    available = *free + buffers.value_or(0) + cached.value_or(0);
  }
  MemSnapshot m;
  m.total_kb = *total;
  m.available_kb = std::min(*available, *total);
  m.timestamp_ns = monotonic_now_ns();
  return m;
}

CpuSnapshot read_cpu_snapshot(const CounterSource& source) {
  return parse_cpu_stat(slurp(source.cpu_stat_path));
}

MemSnapshot read_mem_snapshot(const CounterSource& source) {
  return parse_meminfo(slurp(source.meminfo_path));
}

double cpu_utilization(const CpuSnapshot& a, const CpuSnapshot& b) {
  // Unsigned wraparound would turn a counter reset into a huge delta.
  if (b.total() < a.total() || b.idle_total() < a.idle_total()) {
    throw Error(ErrorCode::kInvalidArgument,
                "second snapshot precedes the first");
  }
  const uint64_t total_delta = b.total() - a.total();
  if (total_delta == 0) {
    throw Error(ErrorCode::kNoDelta, "no ticks elapsed between snapshots");
  }
  const uint64_t idle_delta = b.idle_total() - a.idle_total();
  const uint64_t busy_delta =
      idle_delta > total_delta ? 0 : total_delta - idle_delta;
  return 100.0 * static_cast<double>(busy_delta) /
         static_cast<double>(total_delta);
}

std::optional<double> try_cpu_utilization(const CpuSnapshot& a,
                                          const CpuSnapshot& b) {
  try {
    return cpu_utilization(a, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoDelta) return std::nullopt;
    throw;
  }
}

double memory_utilization(const MemSnapshot& m) {
  if (m.total_kb == 0 || m.available_kb > m.total_kb) {
    throw Error(ErrorCode::kInvalidArgument, "invalid memory snapshot");
  }
  return 100.0 * static_cast<double>(m.total_kb - m.available_kb) /
         static_cast<double>(m.total_kb);
}

}  // namespace picobench

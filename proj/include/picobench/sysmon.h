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

// System-wide CPU and memory sampling from kernel counter files.
//
// CPU utilization is the busy fraction of all ticks elapsed between two
// cumulative snapshots of the aggregate "cpu" line of /proc/stat. Memory
// utilization is (MemTotal - MemAvailable) / MemTotal from /proc/meminfo.
// Both source paths can be redirected to fixture files.

#ifndef PICOBENCH_SYSMON_H_
#define PICOBENCH_SYSMON_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace picobench {

struct CpuSnapshot {
  uint64_t user = 0;
  uint64_t nice = 0;
  uint64_t system = 0;
  uint64_t idle = 0;
  uint64_t iowait = 0;
  uint64_t irq = 0;
  uint64_t softirq = 0;
  uint64_t steal = 0;
  int64_t timestamp_ns = 0;

  uint64_t total() const;
  uint64_t idle_total() const { return idle + iowait; }
};

struct MemSnapshot {
  uint64_t total_kb = 0;
  uint64_t available_kb = 0;
  int64_t timestamp_ns = 0;
};

// Locations of the kernel counter files.
struct CounterSource {
  std::filesystem::path cpu_stat_path = "/proc/stat";
  std::filesystem::path meminfo_path = "/proc/meminfo";

  // Defaults overridden by PICO_CPU_STAT_PATH / PICO_MEMINFO_PATH when set.
  static CounterSource from_environment();
};

// Monotonic clock reading in nanoseconds.
int64_t monotonic_now_ns();

// Parses the aggregate "cpu" line out of /proc/stat contents. Missing
// trailing fields (steal on old kernels) read as 0; guest columns are
// ignored because the kernel already folds them into user/nice.
CpuSnapshot parse_cpu_stat(std::string_view contents);
// Inverse of parse_cpu_stat for a single snapshot: "cpu  u n s i w q sq st".
std::string format_cpu_line(const CpuSnapshot& snapshot);

MemSnapshot parse_meminfo(std::string_view contents);

CpuSnapshot read_cpu_snapshot(const CounterSource& source = {});
MemSnapshot read_mem_snapshot(const CounterSource& source = {});

// Percent of non-idle ticks in the window [a, b]. Throws NoDelta when no
// ticks elapsed.
double cpu_utilization(const CpuSnapshot& a, const CpuSnapshot& b);
// Same as cpu_utilization, with NoDelta mapped to an absent value.
std::optional<double> try_cpu_utilization(const CpuSnapshot& a,
                                          const CpuSnapshot& b);

double memory_utilization(const MemSnapshot& m);

}  // namespace picobench

#endif  // PICOBENCH_SYSMON_H_

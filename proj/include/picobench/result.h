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

// Data carried through a benchmark run: the configuration echo, one record
// per measured iteration, and the metric summaries computed from them.

#ifndef PICOBENCH_RESULT_H_
#define PICOBENCH_RESULT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "picobench/backends.h"
#include "picobench/preprocess.h"

namespace picobench {

inline constexpr std::string_view kLatencyMetric = "latency_ms";
inline constexpr std::string_view kCpuMetric = "cpu_pct";
inline constexpr std::string_view kMemMetric = "mem_pct";
inline constexpr std::string_view kConfidenceMetric = "confidence";

struct ImageParams {
  // 0 keeps the source size.
  size_t resize_h = 0;
  size_t resize_w = 0;
  // Empty skips normalization.
  std::vector<double> mean;
  std::vector<double> stddev;

  bool operator==(const ImageParams&) const = default;
};

struct AudioParams {
  size_t frame_len = kDefaultFrameLen;
  size_t hop_len = kDefaultHopLen;
  double log_floor = kDefaultLogFloor;

  bool operator==(const AudioParams&) const = default;
};

struct PreprocessParams {
  ImageParams image;
  AudioParams audio;
  // Applied to every prepared tensor when set.
  std::optional<Quantization> quantization;

  bool operator==(const PreprocessParams&) const = default;
};

struct BenchmarkConfig {
  std::string model_id;
  BackendSpec backend;
  std::string manifest_path;
  int iterations = 100;
  int warmup = 5;
  std::string platform_label;
  uint64_t seed = 0;
  PreprocessParams preprocess;

  bool operator==(const BenchmarkConfig&) const = default;
};

struct IterationRecord {
  size_t index = 0;
  std::string sample_id;
  double latency_ms = 0.0;
  // Absent when the tick counters did not advance during the iteration.
  std::optional<double> cpu_pct;
  double mem_pct_before = 0.0;
  double mem_pct_after = 0.0;
  std::string predicted_label;
  double confidence = 0.0;

  bool operator==(const IterationRecord&) const = default;
};

struct PlatformInfo {
  std::string label = "unknown";
  std::string os = "unknown";
  std::string cpu_model = "unknown";
  int cores = 1;
  uint64_t total_memory_kb = 0;

  bool operator==(const PlatformInfo&) const = default;
};

// Sample statistics; std uses the n - 1 denominator and is 0 for n == 1.
struct MetricSummary {
  size_t count = 0;
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;

  bool operator==(const MetricSummary&) const = default;
};

struct RunResult {
  BenchmarkConfig config;
  PlatformInfo platform;
  int64_t started_at_unix_ms = 0;
  // Utilization over one window spanning the whole measured phase.
  std::optional<double> cpu_pct_run;
  std::vector<IterationRecord> records;
  // Keyed by kLatencyMetric etc.; a metric with no values has no entry.
  std::map<std::string, MetricSummary, std::less<>> summaries;

  const MetricSummary* summary(std::string_view metric) const {
    auto it = summaries.find(metric);
    return it == summaries.end() ? nullptr : &it->second;
  }

  bool operator==(const RunResult&) const = default;
};

}  // namespace picobench

#endif  // PICOBENCH_RESULT_H_

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

#ifndef PICOBENCH_STATS_H_
#define PICOBENCH_STATS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "picobench/result.h"

namespace picobench {

// Percentiles interpolate linearly at rank r = p / 100 * (n - 1) of the
// sorted series. Throws EmptySeries / NonFiniteValue.
MetricSummary summarize(std::span<const double> values);

// Linear-interpolated percentile of an already sorted, non-empty series.
double percentile_sorted(std::span<const double> sorted, double p);

// Summaries for latency_ms, cpu_pct (present values only), mem_pct
// (mem_pct_after) and confidence. Metrics without values are omitted.
std::map<std::string, MetricSummary, std::less<>> summarize_records(
    std::span<const IterationRecord> records);

struct StabilityReport {
  double confidence_mean = 0.0;
  double confidence_std = 0.0;
  std::map<std::string, size_t> label_histogram;
  size_t distinct_labels = 0;
};

StabilityReport stability(std::span<const IterationRecord> records);

enum class CpuAggregation {
  kIterationMean,  // mean of per-iteration cpu_pct
  kWholeRun,       // cpu_pct_run
};

struct ComparisonEntry {
  std::string metric;
  double value_a = 0.0;
  double value_b = 0.0;
  // value_a / value_b; absent when value_b == 0.
  std::optional<double> ratio;
  double delta = 0.0;
};

struct RunIdentity {
  std::string model_id;
  PlatformInfo platform;
};

struct ComparisonReport {
  RunIdentity a;
  RunIdentity b;
  CpuAggregation cpu_aggregation = CpuAggregation::kIterationMean;
  std::vector<ComparisonEntry> entries;
  // Non-fatal findings: mismatched model ids, metrics present in one run.
  std::vector<std::string> warnings;

  const ComparisonEntry* entry(std::string_view metric) const;
};

// Compares summary means of latency, CPU, memory and confidence. Throws
// MissingMetric when either run lacks a latency summary.
ComparisonReport compare(const RunResult& a, const RunResult& b,
                         CpuAggregation cpu = CpuAggregation::kIterationMean);

}  // namespace picobench

#endif  // PICOBENCH_STATS_H_

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

// Persistence of run results (JSON, CSV) and standalone SVG charts.
//
// Result JSON is schema_version 1. Keys are written in a fixed order and
// every double is printed in its shortest round-trip form, so a write/read cycle
// reproduces each value bit for bit.

#ifndef PICOBENCH_REPORT_H_
#define PICOBENCH_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "picobench/result.h"
#include "picobench/stats.h"

namespace picobench {

inline constexpr int kResultSchemaVersion = 1;

std::string result_to_json(const RunResult& r);
RunResult result_from_json(std::string_view text);

void write_result_json(const RunResult& r, const std::filesystem::path& path);
RunResult read_result_json(const std::filesystem::path& path);

inline constexpr std::string_view kCsvHeader =
    "index,sample_id,latency_ms,cpu_pct,mem_pct_before,mem_pct_after,"
    "predicted_label,confidence";

std::string result_to_csv(const RunResult& r);
void write_result_csv(const RunResult& r, const std::filesystem::path& path);

std::string comparison_to_json(const ComparisonReport& report);
// Fixed-width text table: metric, A, B, ratio, delta.
std::string comparison_to_table(const ComparisonReport& report);

// Writes `contents` to `path`, throwing IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

enum class ChartKind {
  kLatencyHistogram,
  kMetricTrend,      // CPU and memory utilization per iteration
  kConfidenceTrend,
  kPredictionBar,    // predicted-label counts
};

inline constexpr ChartKind kAllChartKinds[] = {
    ChartKind::kLatencyHistogram, ChartKind::kMetricTrend,
    ChartKind::kConfidenceTrend, ChartKind::kPredictionBar};

std::string_view to_string(ChartKind kind);

struct ChartSpec {
  ChartKind kind = ChartKind::kLatencyHistogram;
  std::string title;
  int width = 800;
  int height = 500;
  int bins = 20;  // histogram only

  void validate() const;
};

// Uniform bins over [min, max]. A single-valued series yields one bin.
struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<size_t> counts;
};

Histogram histogram(std::span<const double> values, int bins);

// Self-contained SVG document. Bars carry class="bar" and data-count.
// Throws MissingMetric when the chart's metric has no values.
std::string render_chart_svg(const RunResult& r, const ChartSpec& spec);
void render_chart(const RunResult& r, const ChartSpec& spec,
                  const std::filesystem::path& path);

}  // namespace picobench

#endif  // PICOBENCH_REPORT_H_

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

#include "picobench/stats.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "picobench/error.h"

namespace picobench {

double percentile_sorted(std::span<const double> sorted, double p) {
  const double rank = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(rank));
  const auto hi = static_cast<size_t>(std::ceil(rank));
  return sorted[lo] + (rank - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

MetricSummary summarize(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptySeries, "no values");
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteValue, "series contains " + std::to_string(v));
    }
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  MetricSummary s;
  s.count = sorted.size();
  // Summing the sorted copy makes the result independent of input order.
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  // Rounding in the sum can push the mean outside [min, max]; a constant
  // series must report its value and zero spread exactly.
  s.mean = std::clamp(s.mean, sorted.front(), sorted.back());
  if (sorted.front() == sorted.back()) {
    s.mean = sorted.front();
  } else if (s.count > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  s.min = sorted.front();
  s.max = sorted.back();
  s.p50 = percentile_sorted(sorted, 50.0);
  s.p90 = percentile_sorted(sorted, 90.0);
  s.p95 = percentile_sorted(sorted, 95.0);
  s.p99 = percentile_sorted(sorted, 99.0);
  return s;
}

std::map<std::string, MetricSummary, std::less<>> summarize_records(
    std::span<const IterationRecord> records) {
  std::vector<double> latency, cpu, mem, confidence;
  for (const auto& r : records) {
    latency.push_back(r.latency_ms);
    if (r.cpu_pct) cpu.push_back(*r.cpu_pct);
    mem.push_back(r.mem_pct_after);
    confidence.push_back(r.confidence);
  }
  std::map<std::string, MetricSummary, std::less<>> out;
  if (!latency.empty()) out[std::string(kLatencyMetric)] = summarize(latency);
  if (!cpu.empty()) out[std::string(kCpuMetric)] = summarize(cpu);
  if (!mem.empty()) out[std::string(kMemMetric)] = summarize(mem);
  if (!confidence.empty()) {
    out[std::string(kConfidenceMetric)] = summarize(confidence);
  }
  return out;
}

StabilityReport stability(std::span<const IterationRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptySeries, "no records");
  std::vector<double> confidence;
  confidence.reserve(records.size());
  StabilityReport report;
  for (const auto& r : records) {
    confidence.push_back(r.confidence);
    ++report.label_histogram[r.predicted_label];
  }
  const MetricSummary s = summarize(confidence);
  report.confidence_mean = s.mean;
  report.confidence_std = s.std;
  report.distinct_labels = report.label_histogram.size();
  return report;
}

const ComparisonEntry* ComparisonReport::entry(std::string_view metric) const {
  for (const auto& e : entries) {
    if (e.metric == metric) return &e;
  }
  return nullptr;
}

namespace {

std::optional<double> metric_value(const RunResult& r, std::string_view metric,
                                   CpuAggregation cpu) {
  if (metric == kCpuMetric && cpu == CpuAggregation::kWholeRun) {
    return r.cpu_pct_run;
  }
  if (const auto* s = r.summary(metric)) return s->mean;
  return std::nullopt;
}

}  // namespace

ComparisonReport compare(const RunResult& a, const RunResult& b,
                         CpuAggregation cpu) {
  if (!a.summary(kLatencyMetric) || !b.summary(kLatencyMetric)) {
    throw Error(ErrorCode::kMissingMetric,
                std::string(kLatencyMetric) + " summary missing");
  }
  ComparisonReport report;
  report.a = {a.config.model_id, a.platform};
  report.b = {b.config.model_id, b.platform};
  report.cpu_aggregation = cpu;
  if (a.config.model_id != b.config.model_id) {
    report.warnings.push_back("model ids differ: '" + a.config.model_id +
                              "' vs '" + b.config.model_id + "'");
  }
  for (std::string_view metric :
       {kLatencyMetric, kCpuMetric, kMemMetric, kConfidenceMetric}) {
    const auto va = metric_value(a, metric, cpu);
    const auto vb = metric_value(b, metric, cpu);
    if (!va || !vb) {
      if (va || vb) {
        report.warnings.push_back("MissingMetric: " + std::string(metric) +
                                  " present in only one run");
      }
      continue;
    }
    ComparisonEntry e;
    e.metric = std::string(metric);
    e.value_a = *va;
    e.value_b = *vb;
    if (*vb != 0.0) e.ratio = *va / *vb;
    e.delta = *va - *vb;
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace picobench

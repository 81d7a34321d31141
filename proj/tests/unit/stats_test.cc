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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "picobench/error.h"
#include "support/oracles.h"
#include "support/test_util.h"

namespace picobench {
namespace {

using testing::error_code_of;

std::vector<double> random_series(std::mt19937_64& rng, size_t n) {
  std::vector<double> v(n);
  // Mix of continuous values and heavy ties.
  const bool ties = rng() % 3 == 0;
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (double& x : v) x = ties ? static_cast<double>(rng() % 7) : u(rng);
  return v;
}

void expect_ordered(const MetricSummary& s) {
  EXPECT_LE(s.min, s.p50);
  EXPECT_LE(s.p50, s.p90);
  EXPECT_LE(s.p90, s.p95);
  EXPECT_LE(s.p95, s.p99);
  EXPECT_LE(s.p99, s.max);
  EXPECT_LE(s.min, s.mean);
  EXPECT_LE(s.mean, s.max);
  EXPECT_GE(s.std, 0.0);
}

TEST(SummarizeTest, ConstantSeries) {
  const std::vector<double> v{5, 5, 5, 5};
  const auto s = summarize(v);
  EXPECT_EQ(s, (MetricSummary{4, 5, 0, 5, 5, 5, 5, 5, 5}));
}

TEST(SummarizeTest, ConstantSeriesWithInexactSum) {
  const std::vector<double> v(100, 0.98);
  const auto s = summarize(v);
  EXPECT_EQ(s.mean, 0.98);
  EXPECT_EQ(s.std, 0.0);
}

TEST(SummarizeTest, OneToHundred) {
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i);
  const auto s = summarize(v);
  EXPECT_EQ(s.count, 100u);
  EXPECT_EQ(s.mean, 50.5);
  EXPECT_EQ(s.p50, 50.5);
  EXPECT_NEAR(s.p90, 90.1, 1e-12);
  EXPECT_NEAR(s.p99, 99.01, 1e-12);
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.max, 100.0);
  EXPECT_NEAR(s.std, std::sqrt(100.0 * 101.0 / 12.0), 1e-12);
}

TEST(SummarizeTest, SingleValueHasZeroStd) {
  const std::vector<double> v{-3.25};
  EXPECT_EQ(summarize(v), (MetricSummary{1, -3.25, 0, -3.25, -3.25, -3.25, -3.25, -3.25, -3.25}));
}

TEST(SummarizeTest, Errors) {
  EXPECT_EQ(error_code_of([] { summarize(std::vector<double>{}); }), ErrorCode::kEmptySeries);
  EXPECT_EQ(error_code_of([] { summarize(std::vector<double>{1, NAN}); }),
            ErrorCode::kNonFiniteValue);
  EXPECT_EQ(error_code_of([] { summarize(std::vector<double>{INFINITY}); }),
            ErrorCode::kNonFiniteValue);
}

TEST(SummarizeTest, PercentilesMatchCountingOracle) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    const auto v = random_series(rng, 1 + rng() % 500);
    const auto s = summarize(v);
    ASSERT_EQ(s.count, v.size());
    ASSERT_EQ(s.min, oracle::kth_smallest(v, 0));
    ASSERT_EQ(s.max, oracle::kth_smallest(v, v.size() - 1));
    ASSERT_EQ(s.p50, oracle::percentile(v, 50));
    ASSERT_EQ(s.p90, oracle::percentile(v, 90));
    ASSERT_EQ(s.p95, oracle::percentile(v, 95));
    ASSERT_EQ(s.p99, oracle::percentile(v, 99));
    expect_ordered(s);
  }
}

TEST(SummarizeTest, MomentsMatchExtendedPrecisionOracle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto v = random_series(rng, 1 + rng() % 500);
    const auto s = summarize(v);
    const double scale = std::max(1.0, std::abs(s.max) + std::abs(s.min));
    ASSERT_NEAR(s.mean, static_cast<double>(oracle::mean_two_pass(v)), 1e-12 * scale);
    ASSERT_NEAR(s.std, static_cast<double>(oracle::sample_std_two_pass(v)), 1e-12 * scale);
  }
}

TEST(SummarizeTest, LargeOffsetDoesNotLoseVariance) {
  // One-pass sum-of-squares would cancel catastrophically here.
  std::vector<double> v;
  for (int i = 0; i < 1000; ++i) v.push_back(1e9 + (i % 2 ? 1.0 : -1.0));
  const auto s = summarize(v);
  EXPECT_NEAR(s.std, static_cast<double>(oracle::sample_std_two_pass(v)), 1e-9);
}

TEST(SummarizeTest, PermutationInvariant) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = random_series(rng, 1 + rng() % 200);
    const auto s = summarize(v);
    std::shuffle(v.begin(), v.end(), rng);
    ASSERT_EQ(summarize(v), s);
  }
}

IterationRecord record(std::string label, double confidence, double latency = 1.0,
                       std::optional<double> cpu = {}) {
  IterationRecord r;
  r.sample_id = "s";
  r.latency_ms = latency;
  r.cpu_pct = cpu;
  r.mem_pct_before = 10;
  r.mem_pct_after = 11;
  r.predicted_label = std::move(label);
  r.confidence = confidence;
  return r;
}

TEST(SummarizeRecordsTest, OmitsMetricsWithoutValues) {
  std::vector<IterationRecord> recs{record("a", 0.5, 2.0), record("a", 0.7, 4.0)};
  auto sums = summarize_records(recs);
  EXPECT_EQ(sums.count(std::string(kCpuMetric)), 0u);
  EXPECT_EQ(sums.at(std::string(kLatencyMetric)).mean, 3.0);
  EXPECT_EQ(sums.at(std::string(kMemMetric)).mean, 11.0);

  recs[1].cpu_pct = 40.0;
  sums = summarize_records(recs);
  EXPECT_EQ(sums.at(std::string(kCpuMetric)).count, 1u);
}

TEST(StabilityTest, IdenticalOutputs) {
  std::vector<IterationRecord> recs(100, record("yes", 0.98));
  const auto s = stability(recs);
  EXPECT_EQ(s.confidence_std, 0.0);
  EXPECT_EQ(s.confidence_mean, 0.98);
  EXPECT_EQ(s.distinct_labels, 1u);
  EXPECT_EQ(s.label_histogram.at("yes"), 100u);
}

TEST(StabilityTest, MixedLabels) {
  std::vector<IterationRecord> recs;
  for (int i = 0; i < 10; ++i) recs.push_back(record(i % 2 ? "a" : "b", i % 2 ? 0.9 : 0.5));
  const auto s = stability(recs);
  EXPECT_EQ(s.distinct_labels, 2u);
  EXPECT_EQ(s.label_histogram.at("a"), 5u);
  EXPECT_NEAR(s.confidence_mean, 0.7, 1e-15);
  EXPECT_GT(s.confidence_std, 0.0);
  EXPECT_EQ(error_code_of([] { stability(std::vector<IterationRecord>{}); }),
            ErrorCode::kEmptySeries);
}

RunResult run_with(std::string model, double latency, std::optional<double> cpu,
                   double mem, double conf) {
  RunResult r;
  r.config.model_id = std::move(model);
  std::vector<IterationRecord> recs{record("x", conf, latency, cpu)};
  recs[0].mem_pct_after = mem;
  r.records = recs;
  r.cpu_pct_run = cpu;
  r.summaries = summarize_records(recs);
  return r;
}

TEST(CompareTest, GestureTableOneRatio) {
  const auto a = run_with("gesture", 9.49, 40.38, 15.10, 0.98);
  const auto b = run_with("gesture", 1.76, 8.88, 11.00, 0.98);
  const auto rep = compare(a, b);
  EXPECT_TRUE(rep.warnings.empty());
  const auto* lat = rep.entry(kLatencyMetric);
  ASSERT_NE(lat, nullptr);
  EXPECT_NEAR(*lat->ratio, 5.392, 0.001);
  EXPECT_NEAR(lat->delta, 7.73, 1e-12);
  EXPECT_NEAR(rep.entry(kCpuMetric)->delta, 31.50, 1e-12);
  EXPECT_NEAR(rep.entry(kMemMetric)->delta, 4.10, 1e-12);
  EXPECT_EQ(rep.entry(kConfidenceMetric)->ratio, 1.0);
}

TEST(CompareTest, SelfComparisonIsExact) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    std::uniform_real_distribution<double> u(0.01, 5000);
    const auto a = run_with("m", u(rng), u(rng), u(rng), u(rng));
    const auto rep = compare(a, a);
    for (const auto& e : rep.entries) {
      ASSERT_EQ(e.ratio, 1.0);
      ASSERT_EQ(e.delta, 0.0);
    }
  }
}

TEST(CompareTest, RatioAntisymmetry) {
  const auto a = run_with("m", 2125.04, 51.80, 19.75, 17.16);
  const auto b = run_with("m", 513.60, 28.59, 11.81, 17.16);
  const auto ab = compare(a, b);
  const auto ba = compare(b, a);
  for (const auto& e : ab.entries) {
    const auto* r = ba.entry(e.metric);
    ASSERT_NE(r, nullptr);
    EXPECT_NEAR(*e.ratio * *r->ratio, 1.0, 1e-12);
    EXPECT_EQ(e.delta, -r->delta);
  }
  EXPECT_NEAR(ab.entry(kCpuMetric)->delta, 23.21, 1e-9);
}

TEST(CompareTest, ZeroDenominatorHasNoRatio) {
  const auto a = run_with("m", 1.0, 5.0, 10, 1);
  const auto b = run_with("m", 1.0, 0.0, 10, 1);
  const auto rep = compare(a, b);
  EXPECT_FALSE(rep.entry(kCpuMetric)->ratio);
  EXPECT_EQ(rep.entry(kCpuMetric)->delta, 5.0);
}

TEST(CompareTest, MissingMetricsAndModelMismatch) {
  const auto a = run_with("m1", 1.0, std::nullopt, 10, 1);
  const auto b = run_with("m2", 2.0, 30.0, 10, 1);
  const auto rep = compare(a, b);
  EXPECT_EQ(rep.entry(kCpuMetric), nullptr);
  ASSERT_EQ(rep.warnings.size(), 2u);
  EXPECT_NE(rep.warnings[0].find("model ids differ"), std::string::npos);
  EXPECT_EQ(rep.warnings[1].rfind("MissingMetric", 0), 0u);

  auto no_latency = b;
  no_latency.summaries.erase(std::string(kLatencyMetric));
  EXPECT_EQ(error_code_of([&] { compare(a, no_latency); }), ErrorCode::kMissingMetric);
}

TEST(CompareTest, WholeRunCpuAggregation) {
  auto a = run_with("m", 1.0, 40.0, 10, 1);
  auto b = run_with("m", 1.0, 20.0, 10, 1);
  a.cpu_pct_run = 35.0;
  b.cpu_pct_run = 25.0;
  EXPECT_EQ(compare(a, b, CpuAggregation::kIterationMean).entry(kCpuMetric)->delta, 20.0);
  EXPECT_EQ(compare(a, b, CpuAggregation::kWholeRun).entry(kCpuMetric)->delta, 10.0);
}

}  // namespace
}  // namespace picobench

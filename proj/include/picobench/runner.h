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

// Manifest loading, sample preparation and the measured inference loop.

#ifndef PICOBENCH_RUNNER_H_
#define PICOBENCH_RUNNER_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "picobench/backends.h"
#include "picobench/preprocess.h"
#include "picobench/result.h"
#include "picobench/sysmon.h"

namespace picobench {

enum class SampleType { kImage, kAudio, kTensor };

std::string_view to_string(SampleType type);

// Per-sample preprocessing overrides from the manifest's "preprocess" object.
// Keys mirror the config file: resize_h, resize_w, mean, std, frame_len,
// hop_len, log_floor, quant_scale, quant_zero_point.
struct PreprocessOverrides {
  std::optional<size_t> resize_h;
  std::optional<size_t> resize_w;
  std::optional<std::vector<double>> mean;
  std::optional<std::vector<double>> stddev;
  std::optional<size_t> frame_len;
  std::optional<size_t> hop_len;
  std::optional<double> log_floor;
  std::optional<double> quant_scale;
  std::optional<int> quant_zero_point;

  PreprocessParams apply(PreprocessParams base) const;
};

struct Sample {
  std::string id;
  SampleType type = SampleType::kTensor;
  std::filesystem::path path;  // resolved against the manifest directory
  PreprocessOverrides overrides;
};

struct Dataset {
  std::string name;
  std::vector<Sample> samples;
};

// Parses a manifest:
//   {"name": str, "samples": [{"id", "type": "image|audio|tensor", "path",
//                              "preprocess": {...}}]}
// Throws ManifestParseError, or MissingSampleFile when `check_files` is set
// and a sample path is not a regular file.
Dataset load_manifest(const std::filesystem::path& path, bool check_files = true);

// Decodes and preprocesses one sample. Image samples are PTEN rank-2/3
// tensors, audio samples are 16-bit mono WAV, tensor samples are passed
// through. Any failure is rethrown as PreprocessError naming the sample.
InputTensor prepare_sample(const Sample& sample, const PreprocessParams& params);

struct PreparedSample {
  std::string id;
  InputTensor tensor;
};

struct PlatformSources {
  std::filesystem::path cpuinfo_path = "/proc/cpuinfo";
  std::filesystem::path meminfo_path = "/proc/meminfo";
};

// Best-effort host description; unknown fields stay "unknown".
PlatformInfo detect_platform(const PlatformSources& sources = {});

struct RunOptions {
  CounterSource counters;
  PlatformSources platform;
  // Records collected before a backend failure are written here.
  std::optional<std::filesystem::path> partial_path;
  // Warnings go here when set.
  std::ostream* log = nullptr;
};

// Loads the manifest and backend from `cfg`, prepares every sample, then
// runs the warmup and measured phases.
RunResult run_benchmark(const BenchmarkConfig& cfg, const RunOptions& options = {});

// Measured loop over already prepared samples with a caller-owned backend.
// Iteration i uses samples[i % samples.size()]. The loop is single-threaded
// and does nothing between the two CPU snapshots except the timed call.
RunResult run_loop(const BenchmarkConfig& cfg, Backend& backend,
                   std::span<const PreparedSample> samples,
                   const RunOptions& options = {});

}  // namespace picobench

#endif  // PICOBENCH_RUNNER_H_

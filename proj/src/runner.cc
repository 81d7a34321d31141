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

#include "picobench/runner.h"

#include <sys/utsname.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "picobench/error.h"
#include "picobench/media_io.h"
#include "picobench/report.h"
#include "picobench/stats.h"

namespace picobench {

std::string_view to_string(SampleType type) {
  switch (type) {
    case SampleType::kImage: return "image";
    case SampleType::kAudio: return "audio";
    case SampleType::kTensor: return "tensor";
  }
  return "unknown";
}

PreprocessParams PreprocessOverrides::apply(PreprocessParams p) const {
  if (resize_h) p.image.resize_h = *resize_h;
  if (resize_w) p.image.resize_w = *resize_w;
  if (mean) p.image.mean = *mean;
  if (stddev) p.image.stddev = *stddev;
  if (frame_len) p.audio.frame_len = *frame_len;
  if (hop_len) p.audio.hop_len = *hop_len;
  if (log_floor) p.audio.log_floor = *log_floor;
  if (quant_scale || quant_zero_point) {
    Quantization q = p.quantization.value_or(Quantization{});
    if (quant_scale) q.scale = *quant_scale;
    if (quant_zero_point) q.zero_point = *quant_zero_point;
    p.quantization = q;
  }
  return p;
}

namespace {

using nlohmann::json;

[[noreturn]] void manifest_error(const std::string& where,
                                 const std::string& what) {
  throw Error(ErrorCode::kManifestParseError, where + ": " + what);
}

template <typename T>
std::optional<T> optional_field(const json& obj, const char* key,
                                const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    manifest_error(where + "." + key, "wrong type " + std::string(it->type_name()));
  }
}

PreprocessOverrides parse_overrides(const json& obj, const std::string& where) {
  if (!obj.is_object()) manifest_error(where, "expected an object");
  PreprocessOverrides o;
  o.resize_h = optional_field<size_t>(obj, "resize_h", where);
  o.resize_w = optional_field<size_t>(obj, "resize_w", where);
  o.mean = optional_field<std::vector<double>>(obj, "mean", where);
  o.stddev = optional_field<std::vector<double>>(obj, "std", where);
  o.frame_len = optional_field<size_t>(obj, "frame_len", where);
  o.hop_len = optional_field<size_t>(obj, "hop_len", where);
  o.log_floor = optional_field<double>(obj, "log_floor", where);
  o.quant_scale = optional_field<double>(obj, "quant_scale", where);
  o.quant_zero_point = optional_field<int>(obj, "quant_zero_point", where);
  return o;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Dataset load_manifest(const std::filesystem::path& path, bool check_files) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kManifestParseError, "cannot open " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kManifestParseError, path.string() + ": " + e.what());
  }
  if (!doc.is_object()) manifest_error("manifest", "expected a JSON object");

  Dataset ds;
  ds.name = optional_field<std::string>(doc, "name", "manifest").value_or("");
  auto it = doc.find("samples");
  if (it == doc.end() || !it->is_array()) {
    manifest_error("manifest", "missing \"samples\" array");
  }
  if (it->empty()) manifest_error("manifest", "no samples");

  const auto base = path.parent_path();
  for (size_t i = 0; i < it->size(); ++i) {
    const json& entry = (*it)[i];
    const std::string where = "samples[" + std::to_string(i) + "]";
    if (!entry.is_object()) manifest_error(where, "expected an object");

    Sample s;
    auto id = optional_field<std::string>(entry, "id", where);
    if (!id || id->empty()) manifest_error(where + ".id", "missing");
    s.id = *id;

    auto type = optional_field<std::string>(entry, "type", where);
    if (!type) manifest_error(where + ".type", "missing");
    if (*type == "image") s.type = SampleType::kImage;
    else if (*type == "audio") s.type = SampleType::kAudio;
    else if (*type == "tensor") s.type = SampleType::kTensor;
    else manifest_error(where + ".type", "expected image|audio|tensor, got '" + *type + "'");

    auto rel = optional_field<std::string>(entry, "path", where);
    if (!rel || rel->empty()) manifest_error(where + ".path", "missing");
    std::filesystem::path p(*rel);
    s.path = p.is_absolute() ? p : base / p;

    if (auto pp = entry.find("preprocess"); pp != entry.end() && !pp->is_null()) {
      s.overrides = parse_overrides(*pp, where + ".preprocess");
    }

    std::error_code ec;
    if (check_files && !std::filesystem::is_regular_file(s.path, ec)) {
      throw Error(ErrorCode::kMissingSampleFile,
                  "sample '" + s.id + "': " + s.path.string());
    }
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

InputTensor prepare_sample(const Sample& sample, const PreprocessParams& base) {
  const PreprocessParams params = sample.overrides.apply(base);
  try {
    InputTensor tensor;
    const auto bytes = read_file_bytes(sample.path);
    switch (sample.type) {
      case SampleType::kImage: {
        ImageTensor img = as_image(decode_tensor(bytes));
        const auto& ip = params.image;
        if (ip.resize_h > 0 || ip.resize_w > 0) {
          img = resize_bilinear(img, ip.resize_h > 0 ? ip.resize_h : img.height,
                                ip.resize_w > 0 ? ip.resize_w : img.width);
        }
        if (!ip.mean.empty() || !ip.stddev.empty()) {
          const std::vector<double> zero{0.0};
          const std::vector<double> one{1.0};
          img = normalize(img, ip.mean.empty() ? zero : ip.mean,
                          ip.stddev.empty() ? one : ip.stddev);
        }
        tensor = to_input_tensor(img);
        break;
      }
      case SampleType::kAudio: {
        const AudioClip clip = decode_wav_pcm16(bytes);
        tensor = to_input_tensor(stft_log_power(clip, params.audio.frame_len,
                                                params.audio.hop_len,
                                                params.audio.log_floor));
        break;
      }
      case SampleType::kTensor: {
        const RawTensor raw = decode_tensor(bytes);
        tensor.shape.assign(raw.dims.begin(), raw.dims.end());
        tensor.data = raw.data;
        if (raw.dtype == TensorDType::kU8 && !params.quantization) {
          tensor.dtype = DType::kU8;
        }
        break;
      }
    }
    if (params.quantization) {
      tensor.quantization = params.quantization;
      tensor = quantize(tensor);
    }
    return tensor;
  } catch (const Error& e) {
    throw Error(ErrorCode::kPreprocessError,
                "sample '" + sample.id + "': " + e.what());
  }
}

PlatformInfo detect_platform(const PlatformSources& sources) {
  PlatformInfo info;
  if (utsname u{}; ::uname(&u) == 0) {
    info.os = std::string(u.sysname) + " " + u.release + " " + u.machine;
  }

  int processors = 0;
  std::istringstream cpuinfo(read_text(sources.cpuinfo_path));
  std::string line;
  std::string model;
  // x86 uses "model name"; ARM boards report "Model" (board) and "Hardware".
  int model_rank = 0;
  while (std::getline(cpuinfo, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (key == "processor") ++processors;
    int rank = 0;
    if (key == "model name") rank = 4;
    else if (key == "Model") rank = 3;
    else if (key == "Hardware") rank = 2;
    else if (key == "cpu model") rank = 1;
    if (rank > model_rank && !value.empty()) {
      model = value;
      model_rank = rank;
    }
  }
  if (!model.empty()) info.cpu_model = model;
  if (processors <= 0) {
    processors = static_cast<int>(std::thread::hardware_concurrency());
  }
  info.cores = std::max(processors, 1);

  try {
    info.total_memory_kb =
        read_mem_snapshot({"/nonexistent", sources.meminfo_path}).total_kb;
  } catch (const Error&) {
    info.total_memory_kb = 0;
  }
  return info;
}

RunResult run_benchmark(const BenchmarkConfig& cfg, const RunOptions& options) {
  if (cfg.iterations < 1) {
    throw Error(ErrorCode::kConfigError, "iterations must be >= 1");
  }
  if (cfg.warmup < 0) throw Error(ErrorCode::kConfigError, "warmup must be >= 0");
  cfg.backend.validate();

  const Dataset dataset = load_manifest(cfg.manifest_path);
  std::vector<PreparedSample> prepared;
  prepared.reserve(dataset.samples.size());
  for (const auto& s : dataset.samples) {
    prepared.push_back({s.id, prepare_sample(s, cfg.preprocess)});
  }

  auto backend = backend_load(cfg.backend, cfg.seed);
  RunResult result = run_loop(cfg, *backend, prepared, options);
  backend->close();
  return result;
}

RunResult run_loop(const BenchmarkConfig& cfg, Backend& backend,
                   std::span<const PreparedSample> samples,
                   const RunOptions& options) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "no samples");
  if (cfg.iterations < 1) {
    throw Error(ErrorCode::kConfigError, "iterations must be >= 1");
  }
  auto warn = [&](const std::string& msg) {
    if (options.log) *options.log << "PICO-W001: " << msg << '\n';
  };

  RunResult result;
  result.config = cfg;
  result.platform = detect_platform(options.platform);
  result.platform.label = cfg.platform_label.empty() ? "unknown" : cfg.platform_label;
  result.started_at_unix_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();

  const CounterSource& counters = options.counters;
  bool cpu_available = true;
  try {
    read_cpu_snapshot(counters);
  } catch (const Error& e) {
    cpu_available = false;
    warn(std::string("CPU counters unavailable, cpu_pct not recorded: ") + e.what());
  }

  const auto n = samples.size();
  for (int i = 0; i < cfg.warmup; ++i) {
    backend.infer(samples[static_cast<size_t>(i) % n].tensor);
  }

  auto flush_partial = [&] {
    if (!options.partial_path) return;
    RunResult partial = result;
    partial.summaries = summarize_records(partial.records);
    try {
      write_result_json(partial, *options.partial_path);
    } catch (const Error& e) {
      warn(std::string("could not write partial results: ") + e.what());
    }
  };

  result.records.reserve(static_cast<size_t>(cfg.iterations));
  std::optional<CpuSnapshot> run_start;
  CpuSnapshot cpu_b;
  size_t clock_floor_hits = 0;
  for (int i = 0; i < cfg.iterations; ++i) {
    const PreparedSample& sample = samples[static_cast<size_t>(i) % n];
    IterationRecord rec;
    rec.index = static_cast<size_t>(i);
    rec.sample_id = sample.id;

    const MemSnapshot mem_before = read_mem_snapshot(counters);
    CpuSnapshot cpu_a;
    if (cpu_available) cpu_a = read_cpu_snapshot(counters);
    if (!run_start && cpu_available) run_start = cpu_a;

    InferenceOutput out;
    const int64_t t0 = monotonic_now_ns();
    try {
      out = backend.infer(sample.tensor);
    } catch (const Error&) {
      flush_partial();
      throw;
    }
    const int64_t t1 = monotonic_now_ns();

    if (cpu_available) cpu_b = read_cpu_snapshot(counters);
    const MemSnapshot mem_after = read_mem_snapshot(counters);

    if (t1 > t0) {
      rec.latency_ms = static_cast<double>(t1 - t0) / 1e6;
    } else {
      rec.latency_ms = 1e-6;  // one tick of the nanosecond clock
      ++clock_floor_hits;
    }
    if (cpu_available) rec.cpu_pct = try_cpu_utilization(cpu_a, cpu_b);
    rec.mem_pct_before = memory_utilization(mem_before);
    rec.mem_pct_after = memory_utilization(mem_after);
    rec.predicted_label = std::move(out.label);
    rec.confidence = out.confidence;
    result.records.push_back(std::move(rec));
  }

  if (run_start) result.cpu_pct_run = try_cpu_utilization(*run_start, cpu_b);
  if (clock_floor_hits > 0) {
    warn(std::to_string(clock_floor_hits) +
         " iteration(s) finished within one clock tick; latency set to 1 ns");
  }
  result.summaries = summarize_records(result.records);
  return result;
}

}  // namespace picobench

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

#include "picobench/report.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "picobench/error.h"

namespace picobench {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonFiniteValue, "cannot serialize non-finite value");
  }
  // Shortest representation that parses back to the same bits.
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, res.ptr);
  // Keep the value typed as a float (and -0.0 distinct from 0) on re-parse.
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

// Minimal pretty-printing JSON emitter with caller-controlled key order.
class JsonWriter {
 public:
  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  JsonWriter& key(std::string_view k) {
    separate();
    string_literal(k);
    out_ += ": ";
    after_key_ = true;
    return *this;
  }

  void value(double v) { scalar(format_double(v)); }
  void value(int v) { scalar(std::to_string(v)); }
  void value(int64_t v) { scalar(std::to_string(v)); }
  void value(uint64_t v) { scalar(std::to_string(v)); }
  void value(bool v) { scalar(v ? "true" : "false"); }
  void value(std::string_view s) {
    separate();
    string_literal(s);
  }
  void value(const char* s) { value(std::string_view(s)); }
  void null() { scalar("null"); }
  void value(const std::optional<double>& v) {
    if (v) value(*v);
    else null();
  }

  // Arrays of numbers stay on one line.
  void inline_array(const std::vector<double>& values) {
    separate();
    out_ += '[';
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) out_ += ", ";
      out_ += format_double(values[i]);
    }
    out_ += ']';
  }

  std::string finish() {
    out_ += '\n';
    return std::move(out_);
  }

 private:
  void scalar(const std::string& text) {
    separate();
    out_ += text;
  }

  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
      newline();
    }
  }

  void open(char c) {
    separate();
    out_ += c;
    first_.push_back(true);
  }

  void close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ += c;
  }

  void newline() {
    out_ += '\n';
    out_.append(2 * first_.size(), ' ');
  }

  void string_literal(std::string_view s) {
    out_ += '"';
    for (char ch : s) {
      const auto c = static_cast<unsigned char>(ch);
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        case '\b': out_ += "\\b"; break;
        case '\f': out_ += "\\f"; break;
        default:
          if (c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += ch;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

void write_summary(JsonWriter& w, const MetricSummary& s) {
  w.begin_object();
  w.key("count").value(s.count);
  w.key("mean").value(s.mean);
  w.key("std").value(s.std);
  w.key("min").value(s.min);
  w.key("max").value(s.max);
  w.key("p50").value(s.p50);
  w.key("p90").value(s.p90);
  w.key("p95").value(s.p95);
  w.key("p99").value(s.p99);
  w.end_object();
}

void write_platform(JsonWriter& w, const PlatformInfo& p) {
  w.begin_object();
  w.key("label").value(p.label);
  w.key("os").value(p.os);
  w.key("cpu_model").value(p.cpu_model);
  w.key("cores").value(p.cores);
  w.key("total_memory_kb").value(p.total_memory_kb);
  w.end_object();
}

void write_backend(JsonWriter& w, const BackendSpec& b) {
  w.begin_object();
  w.key("kind").value(to_string(b.kind));
  switch (b.kind) {
    case BackendKind::kSynthetic:
      w.key("n_classes").value(b.n_classes);
      w.key("input_len").value(b.input_len);
      w.key("busy_ms").value(b.busy_ms);
      if (b.seed) w.key("seed").value(*b.seed);
      break;
    case BackendKind::kSubprocess:
      w.key("command").value(b.command);
      w.key("args").begin_array();
      for (const auto& a : b.args) w.value(a);
      w.end_array();
      w.key("timeout_ms").value(b.timeout_ms);
      break;
    case BackendKind::kReplay:
      w.key("path").value(b.path);
      break;
  }
  w.end_object();
}

void write_config(JsonWriter& w, const BenchmarkConfig& c) {
  w.begin_object();
  w.key("model_id").value(c.model_id);
  w.key("platform_label").value(c.platform_label);
  w.key("manifest_path").value(c.manifest_path);
  w.key("iterations").value(c.iterations);
  w.key("warmup").value(c.warmup);
  w.key("seed").value(c.seed);
  w.key("backend");
  write_backend(w, c.backend);
  w.key("preprocess").begin_object();
  w.key("image").begin_object();
  w.key("resize_h").value(c.preprocess.image.resize_h);
  w.key("resize_w").value(c.preprocess.image.resize_w);
  w.key("mean").inline_array(c.preprocess.image.mean);
  w.key("std").inline_array(c.preprocess.image.stddev);
  w.end_object();
  w.key("audio").begin_object();
  w.key("frame_len").value(c.preprocess.audio.frame_len);
  w.key("hop_len").value(c.preprocess.audio.hop_len);
  w.key("log_floor").value(c.preprocess.audio.log_floor);
  w.end_object();
  w.key("quantization");
  if (const auto& q = c.preprocess.quantization) {
    w.begin_object();
    w.key("scale").value(q->scale);
    w.key("zero_point").value(q->zero_point);
    w.end_object();
  } else {
    w.null();
  }
  w.end_object();
  w.end_object();
}

// --- reading ---------------------------------------------------------------

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::kParseError, pointer + ": " + what);
}

const json& member(const json& obj, const std::string& ptr, const char* key) {
  if (!obj.is_object()) parse_fail(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(ptr + "/" + key, "missing");
  return *it;
}

template <typename T>
T field(const json& obj, const std::string& ptr, const char* key) {
  const json& v = member(obj, ptr, key);
  const std::string here = ptr + "/" + key;
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) parse_fail(here, "expected a string");
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) parse_fail(here, "expected a number");
  } else if constexpr (std::is_unsigned_v<T>) {
    if (!v.is_number_unsigned()) parse_fail(here, "expected a non-negative integer");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) parse_fail(here, "expected an integer");
  }
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    parse_fail(here, e.what());
  }
}

std::optional<double> nullable_double(const json& obj, const std::string& ptr,
                                      const char* key) {
  const json& v = member(obj, ptr, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) parse_fail(ptr + "/" + key, "expected a number or null");
  return v.get<double>();
}

std::vector<double> double_array(const json& obj, const std::string& ptr,
                                 const char* key) {
  const json& v = member(obj, ptr, key);
  if (!v.is_array()) parse_fail(ptr + "/" + key, "expected an array");
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      parse_fail(ptr + "/" + key + "/" + std::to_string(i), "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

MetricSummary read_summary(const json& j, const std::string& ptr) {
  MetricSummary s;
  s.count = field<size_t>(j, ptr, "count");
  s.mean = field<double>(j, ptr, "mean");
  s.std = field<double>(j, ptr, "std");
  s.min = field<double>(j, ptr, "min");
  s.max = field<double>(j, ptr, "max");
  s.p50 = field<double>(j, ptr, "p50");
  s.p90 = field<double>(j, ptr, "p90");
  s.p95 = field<double>(j, ptr, "p95");
  s.p99 = field<double>(j, ptr, "p99");
  return s;
}

BackendSpec read_backend(const json& j, const std::string& ptr) {
  BackendSpec b;
  const auto kind_name = field<std::string>(j, ptr, "kind");
  const auto kind = backend_kind_from_string(kind_name);
  if (!kind) parse_fail(ptr + "/kind", "unknown backend kind '" + kind_name + "'");
  b.kind = *kind;
  switch (b.kind) {
    case BackendKind::kSynthetic:
      b.n_classes = field<int>(j, ptr, "n_classes");
      b.input_len = field<size_t>(j, ptr, "input_len");
      b.busy_ms = field<double>(j, ptr, "busy_ms");
      if (j.contains("seed")) b.seed = field<uint64_t>(j, ptr, "seed");
      break;
    case BackendKind::kSubprocess: {
      b.command = field<std::string>(j, ptr, "command");
      const json& args = member(j, ptr, "args");
      if (!args.is_array()) parse_fail(ptr + "/args", "expected an array");
      for (size_t i = 0; i < args.size(); ++i) {
        if (!args[i].is_string()) {
          parse_fail(ptr + "/args/" + std::to_string(i), "expected a string");
        }
        b.args.push_back(args[i].get<std::string>());
      }
      b.timeout_ms = field<int>(j, ptr, "timeout_ms");
      break;
    }
    case BackendKind::kReplay:
      b.path = field<std::string>(j, ptr, "path");
      break;
  }
  return b;
}

BenchmarkConfig read_config(const json& j, const std::string& ptr) {
  BenchmarkConfig c;
  c.model_id = field<std::string>(j, ptr, "model_id");
  c.platform_label = field<std::string>(j, ptr, "platform_label");
  c.manifest_path = field<std::string>(j, ptr, "manifest_path");
  c.iterations = field<int>(j, ptr, "iterations");
  c.warmup = field<int>(j, ptr, "warmup");
  c.seed = field<uint64_t>(j, ptr, "seed");
  c.backend = read_backend(member(j, ptr, "backend"), ptr + "/backend");

  const std::string pp_ptr = ptr + "/preprocess";
  const json& pp = member(j, ptr, "preprocess");
  const std::string img_ptr = pp_ptr + "/image";
  const json& img = member(pp, pp_ptr, "image");
  c.preprocess.image.resize_h = field<size_t>(img, img_ptr, "resize_h");
  c.preprocess.image.resize_w = field<size_t>(img, img_ptr, "resize_w");
  c.preprocess.image.mean = double_array(img, img_ptr, "mean");
  c.preprocess.image.stddev = double_array(img, img_ptr, "std");
  const std::string audio_ptr = pp_ptr + "/audio";
  const json& audio = member(pp, pp_ptr, "audio");
  c.preprocess.audio.frame_len = field<size_t>(audio, audio_ptr, "frame_len");
  c.preprocess.audio.hop_len = field<size_t>(audio, audio_ptr, "hop_len");
  c.preprocess.audio.log_floor = field<double>(audio, audio_ptr, "log_floor");
  if (const json& q = member(pp, pp_ptr, "quantization"); !q.is_null()) {
    const std::string q_ptr = pp_ptr + "/quantization";
    c.preprocess.quantization =
        Quantization{field<double>(q, q_ptr, "scale"), field<int>(q, q_ptr, "zero_point")};
  }
  return c;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string_view cpu_aggregation_name(CpuAggregation c) {
  return c == CpuAggregation::kWholeRun ? "whole_run" : "iteration_mean";
}

}  // namespace

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::string result_to_json(const RunResult& r) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version").value(kResultSchemaVersion);
  w.key("model_id").value(r.config.model_id);
  w.key("platform");
  write_platform(w, r.platform);
  w.key("config");
  write_config(w, r.config);
  w.key("started_at_unix_ms").value(r.started_at_unix_ms);
  w.key("cpu_pct_run").value(r.cpu_pct_run);
  w.key("records").begin_array();
  for (const auto& rec : r.records) {
    w.begin_object();
    w.key("index").value(rec.index);
    w.key("sample_id").value(rec.sample_id);
    w.key("latency_ms").value(rec.latency_ms);
    w.key("cpu_pct").value(rec.cpu_pct);
    w.key("mem_pct_before").value(rec.mem_pct_before);
    w.key("mem_pct_after").value(rec.mem_pct_after);
    w.key("predicted_label").value(rec.predicted_label);
    w.key("confidence").value(rec.confidence);
    w.end_object();
  }
  w.end_array();
  w.key("summaries").begin_object();
  for (std::string_view metric :
       {kLatencyMetric, kCpuMetric, kMemMetric, kConfidenceMetric}) {
    if (const auto* s = r.summary(metric)) {
      w.key(metric);
      write_summary(w, *s);
    }
  }
  w.end_object();
  w.end_object();
  return w.finish();
}

RunResult result_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("at byte ") +
                                            std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) parse_fail("", "expected a JSON object");
  const json& version = member(doc, "", "schema_version");
  if (!version.is_number_integer()) parse_fail("/schema_version", "expected an integer");
  if (version.get<int64_t>() != kResultSchemaVersion) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "schema_version " + version.dump() + ", expected " +
                    std::to_string(kResultSchemaVersion));
  }

  RunResult r;
  r.config = read_config(member(doc, "", "config"), "/config");
  r.config.model_id = field<std::string>(doc, "", "model_id");

  const json& p = member(doc, "", "platform");
  r.platform.label = field<std::string>(p, "/platform", "label");
  r.platform.os = field<std::string>(p, "/platform", "os");
  r.platform.cpu_model = field<std::string>(p, "/platform", "cpu_model");
  r.platform.cores = field<int>(p, "/platform", "cores");
  r.platform.total_memory_kb = field<uint64_t>(p, "/platform", "total_memory_kb");

  r.started_at_unix_ms = field<int64_t>(doc, "", "started_at_unix_ms");
  r.cpu_pct_run = nullable_double(doc, "", "cpu_pct_run");

  const json& records = member(doc, "", "records");
  if (!records.is_array()) parse_fail("/records", "expected an array");
  r.records.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    const std::string ptr = "/records/" + std::to_string(i);
    const json& j = records[i];
    IterationRecord rec;
    rec.index = field<size_t>(j, ptr, "index");
    rec.sample_id = field<std::string>(j, ptr, "sample_id");
    rec.latency_ms = field<double>(j, ptr, "latency_ms");
    rec.cpu_pct = nullable_double(j, ptr, "cpu_pct");
    rec.mem_pct_before = field<double>(j, ptr, "mem_pct_before");
    rec.mem_pct_after = field<double>(j, ptr, "mem_pct_after");
    rec.predicted_label = field<std::string>(j, ptr, "predicted_label");
    rec.confidence = field<double>(j, ptr, "confidence");
    r.records.push_back(std::move(rec));
  }

  const json& summaries = member(doc, "", "summaries");
  if (!summaries.is_object()) parse_fail("/summaries", "expected an object");
  for (std::string_view metric :
       {kLatencyMetric, kCpuMetric, kMemMetric, kConfidenceMetric}) {
    const std::string key(metric);
    if (auto it = summaries.find(key); it != summaries.end() && !it->is_null()) {
      r.summaries[key] = read_summary(*it, "/summaries/" + key);
    }
  }
  return r;
}

void write_result_json(const RunResult& r, const std::filesystem::path& path) {
  write_text_file(path, result_to_json(r));
}

RunResult read_result_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return result_from_json(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::string result_to_csv(const RunResult& r) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& rec : r.records) {
    out += std::to_string(rec.index);
    out += ',';
    out += csv_field(rec.sample_id);
    out += ',';
    out += format_double(rec.latency_ms);
    out += ',';
    if (rec.cpu_pct) out += format_double(*rec.cpu_pct);
    out += ',';
    out += format_double(rec.mem_pct_before);
    out += ',';
    out += format_double(rec.mem_pct_after);
    out += ',';
    out += csv_field(rec.predicted_label);
    out += ',';
    out += format_double(rec.confidence);
    out += '\n';
  }
  return out;
}

void write_result_csv(const RunResult& r, const std::filesystem::path& path) {
  write_text_file(path, result_to_csv(r));
}

std::string comparison_to_json(const ComparisonReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version").value(kResultSchemaVersion);
  for (const auto* side : {&report.a, &report.b}) {
    w.key(side == &report.a ? "a" : "b").begin_object();
    w.key("model_id").value(side->model_id);
    w.key("platform");
    write_platform(w, side->platform);
    w.end_object();
  }
  w.key("cpu_aggregation").value(cpu_aggregation_name(report.cpu_aggregation));
  w.key("metrics").begin_array();
  for (const auto& e : report.entries) {
    w.begin_object();
    w.key("metric").value(e.metric);
    w.key("a").value(e.value_a);
    w.key("b").value(e.value_b);
    w.key("ratio").value(e.ratio);
    w.key("delta").value(e.delta);
    w.end_object();
  }
  w.end_array();
  w.key("warnings").begin_array();
  for (const auto& msg : report.warnings) w.value(msg);
  w.end_array();
  w.end_object();
  return w.finish();
}

std::string comparison_to_table(const ComparisonReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "A: %s @ %s\nB: %s @ %s\n",
                report.a.model_id.c_str(), report.a.platform.label.c_str(),
                report.b.model_id.c_str(), report.b.platform.label.c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-12s %14s %14s %8s %14s\n", "metric", "A",
                "B", "ratio", "delta");
  out += line;
  for (const auto& e : report.entries) {
    char ratio[32] = "n/a";
    if (e.ratio) std::snprintf(ratio, sizeof(ratio), "%.2f", *e.ratio);
    std::snprintf(line, sizeof(line), "%-12s %14.4f %14.4f %8s %14.2f\n",
                  e.metric.c_str(), e.value_a, e.value_b, ratio, e.delta);
    out += line;
  }
  return out;
}

}  // namespace picobench

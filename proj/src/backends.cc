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

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"
#include "picobench/backends.h"
#include "picobench/error.h"

namespace picobench {

size_t argmax(const std::vector<double>& scores) {
  size_t best = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kSynthetic: return "synthetic";
    case BackendKind::kSubprocess: return "subprocess";
    case BackendKind::kReplay: return "replay";
  }
  return "unknown";
}

std::optional<BackendKind> backend_kind_from_string(std::string_view name) {
  if (name == "synthetic") return BackendKind::kSynthetic;
  if (name == "subprocess") return BackendKind::kSubprocess;
  if (name == "replay") return BackendKind::kReplay;
  return std::nullopt;
}

void BackendSpec::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kConfigError, msg);
  };
  switch (kind) {
    case BackendKind::kSynthetic:
      if (n_classes < 1) fail("backend.n_classes must be >= 1");
      if (input_len < 1) fail("backend.input_len must be >= 1");
      if (!(busy_ms >= 0.0) || !std::isfinite(busy_ms)) {
        fail("backend.busy_ms must be >= 0");
      }
      break;
    case BackendKind::kSubprocess:
      if (command.empty()) fail("missing field 'backend.command'");
      if (timeout_ms <= 0) fail("backend.timeout_ms must be > 0");
      break;
    case BackendKind::kReplay:
      if (path.empty()) fail("missing field 'backend.path'");
      break;
  }
}

// --- synthetic -------------------------------------------------------------

SyntheticBackend::SyntheticBackend(int n_classes, size_t input_len,
                                   double busy_ms, uint64_t seed)
    : n_classes_(n_classes), input_len_(input_len), busy_ms_(busy_ms) {
  std::mt19937_64 engine(seed);
  auto draw = [&engine] {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  const auto rows = static_cast<size_t>(n_classes);
  weights_.resize(rows * input_len);
  for (double& w : weights_) w = draw();
  bias_.resize(rows);
  for (double& b : bias_) b = draw();
}

void SyntheticBackend::set_parameters(std::vector<double> weights,
                                      std::vector<double> bias) {
  const auto rows = static_cast<size_t>(n_classes_);
  if (weights.size() != rows * input_len_ || bias.size() != rows) {
    throw Error(ErrorCode::kShapeMismatch, "parameter shapes do not match");
  }
  weights_ = std::move(weights);
  bias_ = std::move(bias);
}

InferenceOutput SyntheticBackend::infer(const InputTensor& input) {
  if (closed_) throw Error(ErrorCode::kBackendCrashed, "backend is closed");
  if (input.data.size() != input_len_) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected " + std::to_string(input_len_) + " elements, got " +
                    std::to_string(input.data.size()));
  }

  if (busy_ms_ > 0.0) {
    using clock = std::chrono::steady_clock;
    const auto until =
        clock::now() + std::chrono::duration_cast<clock::duration>(
                           std::chrono::duration<double, std::milli>(busy_ms_));
    while (clock::now() < until) {
    }
  }

  const auto rows = static_cast<size_t>(n_classes_);
  std::vector<double> scores(rows);
  for (size_t r = 0; r < rows; ++r) {
    double acc = bias_[r];
    const double* w = weights_.data() + r * input_len_;
    for (size_t k = 0; k < input_len_; ++k) acc += w[k] * input.data[k];
    scores[r] = acc;
  }
  const size_t best = argmax(scores);
  return {"class_" + std::to_string(best), scores[best], std::move(scores)};
}

// --- replay ----------------------------------------------------------------

namespace {

InferenceOutput output_from_json(const nlohmann::json& j) {
  InferenceOutput out;
  out.label = j.at("label").get<std::string>();
  out.confidence = j.at("confidence").get<double>();
  if (auto it = j.find("raw_scores"); it != j.end() && !it->is_null()) {
    out.raw_scores = it->get<std::vector<double>>();
    if (out.raw_scores->empty()) {
      throw Error(ErrorCode::kProtocolError, "raw_scores is empty");
    }
    const double best = (*out.raw_scores)[argmax(*out.raw_scores)];
    if (best != out.confidence) {
      throw Error(ErrorCode::kProtocolError,
                  "confidence differs from max(raw_scores)");
    }
  }
  return out;
}

}  // namespace

ReplayBackend::ReplayBackend(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kReplayFileMissing, path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      trace_.push_back(output_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (trace_.empty()) {
    throw Error(ErrorCode::kParseError, path + ": trace has no records");
  }
}

ReplayBackend::ReplayBackend(std::vector<InferenceOutput> trace)
    : trace_(std::move(trace)) {
  if (trace_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "trace has no records");
  }
}

InferenceOutput ReplayBackend::infer(const InputTensor&) {
  if (closed_) throw Error(ErrorCode::kBackendCrashed, "backend is closed");
  InferenceOutput out = trace_[next_];
  next_ = (next_ + 1) % trace_.size();
  return out;
}

// --- factory ---------------------------------------------------------------

std::unique_ptr<Backend> backend_load(const BackendSpec& spec,
                                      uint64_t default_seed) {
  spec.validate();
  switch (spec.kind) {
    case BackendKind::kSynthetic:
      return std::make_unique<SyntheticBackend>(
          spec.n_classes, spec.input_len, spec.busy_ms,
          spec.seed.value_or(default_seed));
    case BackendKind::kSubprocess:
      return std::make_unique<SubprocessBackend>(spec.command, spec.args,
                                                 spec.timeout_ms);
    case BackendKind::kReplay:
      return std::make_unique<ReplayBackend>(spec.path);
  }
  throw Error(ErrorCode::kConfigError, "unknown backend kind");
}

// --- wire ------------------------------------------------------------------

namespace wire {
namespace {

constexpr char kAlphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int sextet(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

nlohmann::json parse_message(std::string_view line, std::string_view type) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProtocolError,
                std::string("malformed JSON from child: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string() ||
      j["type"] != type) {
    throw Error(ErrorCode::kProtocolError,
                "expected message of type '" + std::string(type) + "'");
  }
  return j;
}

}  // namespace

std::string base64_encode(std::span<const uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  if (const size_t rest = bytes.size() - i; rest > 0) {
    uint32_t v = bytes[i] << 16;
    if (rest == 2) v |= bytes[i + 1] << 8;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += rest == 2 ? kAlphabet[(v >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

std::vector<uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) {
    throw Error(ErrorCode::kProtocolError, "base64 length not a multiple of 4");
  }
  std::vector<uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (size_t i = 0; i < text.size(); i += 4) {
    int s[4];
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=' && i + 4 == text.size() && k >= 2) {
        s[k] = 0;
        ++pad;
      } else if (pad > 0 || (s[k] = sextet(c)) < 0) {
        throw Error(ErrorCode::kProtocolError, "invalid base64 character");
      }
    }
    const uint32_t v = (s[0] << 18) | (s[1] << 12) | (s[2] << 6) | s[3];
    out.push_back(static_cast<uint8_t>(v >> 16));
    if (pad < 2) out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
    if (pad < 1) out.push_back(static_cast<uint8_t>(v & 0xff));
  }
  return out;
}

std::vector<uint8_t> pack_tensor(const InputTensor& t) {
  std::vector<uint8_t> out;
  if (t.dtype == DType::kU8) {
    out.reserve(t.data.size());
    for (double v : t.data) out.push_back(static_cast<uint8_t>(v));
    return out;
  }
  out.reserve(t.data.size() * 4);
  for (double v : t.data) {
    const auto bits = std::bit_cast<uint32_t>(static_cast<float>(v));
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<uint8_t>(bits >> (8 * b)));
  }
  return out;
}

std::string hello_message() {
  return nlohmann::json{{"type", "hello"}, {"version", 1}}.dump();
}

std::string shutdown_message() {
  return nlohmann::json{{"type", "shutdown"}}.dump();
}

std::string infer_request(uint64_t id, const InputTensor& t) {
  nlohmann::json j;
  j["type"] = "infer";
  j["id"] = id;
  j["shape"] = t.shape;
  j["dtype"] = t.dtype == DType::kU8 ? "u8" : "f32";
  j["data"] = base64_encode(pack_tensor(t));
  return j.dump();
}

std::string parse_ready(std::string_view line) {
  const auto j = parse_message(line, "ready");
  if (auto it = j.find("model"); it != j.end() && it->is_string()) {
    return it->get<std::string>();
  }
  return "unnamed";
}

InferenceOutput parse_result(std::string_view line, uint64_t expected_id) {
  const auto j = parse_message(line, "result");
  if (!j.contains("id") || !j["id"].is_number_unsigned()) {
    throw Error(ErrorCode::kProtocolError, "result without an id");
  }
  const auto id = j["id"].get<uint64_t>();
  if (id != expected_id) {
    throw Error(ErrorCode::kProtocolError,
                "response id " + std::to_string(id) + " does not match request " +
                    std::to_string(expected_id));
  }
  if (!j.contains("label") || !j["label"].is_string() ||
      !j.contains("confidence") || !j["confidence"].is_number()) {
    throw Error(ErrorCode::kProtocolError, "result missing label/confidence");
  }
  try {
    return output_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProtocolError, e.what());
  }
}

}  // namespace wire
}  // namespace picobench

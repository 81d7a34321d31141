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

#ifndef PICOBENCH_BACKENDS_H_
#define PICOBENCH_BACKENDS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "picobench/error.h"
#include "picobench/preprocess.h"

namespace picobench {

// What a backend returns for one inference. `confidence` is the raw model
// output for the predicted label and is not restricted to [0, 1].
struct InferenceOutput {
  std::string label;
  double confidence = 0.0;
  std::optional<std::vector<double>> raw_scores;

  bool operator==(const InferenceOutput&) const = default;
};

// Index of the largest score; ties go to the lowest index.
size_t argmax(const std::vector<double>& scores);

enum class BackendKind { kSynthetic, kSubprocess, kReplay };

std::string_view to_string(BackendKind kind);
std::optional<BackendKind> backend_kind_from_string(std::string_view name);

struct BackendSpec {
  BackendKind kind = BackendKind::kSynthetic;

  // synthetic
  int n_classes = 0;
  size_t input_len = 0;
  double busy_ms = 0.0;
  std::optional<uint64_t> seed;  // falls back to the run seed when unset

  // subprocess
  std::string command;
  std::vector<std::string> args;
  int timeout_ms = 5000;

  // replay
  std::string path;

  // Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(const BackendSpec&) const = default;
};

// A loaded model. A handle must not be used from two threads at once.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual InferenceOutput infer(const InputTensor& input) = 0;
  // Idempotent; infer() after close() is an error.
  virtual void close() {}
  virtual std::string name() const = 0;
};

// Deterministic linear classifier: scores = W x + bias.
//
// W (n_classes x input_len, row-major) followed by bias (n_classes) are drawn
// once at load from std::mt19937_64 seeded with `seed`; each 64-bit output u
// maps to (u >> 11) * 2^-53 * 2 - 1, a double in [-1, 1). Each call first
// busy-spins on the monotonic clock for busy_ms, then evaluates the scores in
// index order. The label is "class_<argmax>" and confidence the max score.
class SyntheticBackend final : public Backend {
 public:
  SyntheticBackend(int n_classes, size_t input_len, double busy_ms,
                   uint64_t seed);

  InferenceOutput infer(const InputTensor& input) override;
  void close() override { closed_ = true; }
  std::string name() const override { return "synthetic"; }

  // Replaces the drawn parameters. Test hook.
  void set_parameters(std::vector<double> weights, std::vector<double> bias);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }

 private:
  int n_classes_;
  size_t input_len_;
  double busy_ms_;
  std::vector<double> weights_;
  std::vector<double> bias_;
  bool closed_ = false;
};

// Serves outputs recorded in a JSON Lines trace, one object per line:
//   {"label": "...", "confidence": <number>, "raw_scores": [...]}
// Wraps around at the end of the trace.
class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(const std::string& path);
  explicit ReplayBackend(std::vector<InferenceOutput> trace);

  InferenceOutput infer(const InputTensor& input) override;
  void close() override { closed_ = true; }
  std::string name() const override { return "replay"; }

  size_t size() const { return trace_.size(); }

 private:
  std::vector<InferenceOutput> trace_;
  size_t next_ = 0;
  bool closed_ = false;
};

// Drives an external model runner over newline-delimited JSON on the child's
// stdin/stdout. The child's stderr is inherited.
class SubprocessBackend final : public Backend {
 public:
  SubprocessBackend(const std::string& command,
                    const std::vector<std::string>& args, int timeout_ms);
  ~SubprocessBackend() override;

  SubprocessBackend(const SubprocessBackend&) = delete;
  SubprocessBackend& operator=(const SubprocessBackend&) = delete;

  InferenceOutput infer(const InputTensor& input) override;
  // Sends a shutdown request and closes the child's stdin; kills the child
  // if it has not exited after 2 s.
  void close() override;
  std::string name() const override { return "subprocess:" + model_name_; }

  int pid() const { return pid_; }
  const std::string& model_name() const { return model_name_; }

 private:
  void send_line(const std::string& line);
  // Next line from the child, or nullopt on EOF. Throws `on_timeout` when
  // no complete line arrives within timeout_ms.
  std::optional<std::string> read_line(ErrorCode on_timeout);

  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  int timeout_ms_;
  uint64_t next_id_ = 1;
  std::string buffer_;
  std::string model_name_;
  bool broken_ = false;
};

// `default_seed` seeds a synthetic backend whose spec carries no seed.
std::unique_ptr<Backend> backend_load(const BackendSpec& spec,
                                      uint64_t default_seed = 0);

// Wire protocol helpers, exposed for tests and alternative transports.
namespace wire {

std::string base64_encode(std::span<const uint8_t> bytes);
std::vector<uint8_t> base64_decode(std::string_view text);

// Little-endian packed payload: f32 per element or one byte per u8 code.
std::vector<uint8_t> pack_tensor(const InputTensor& t);

std::string hello_message();
std::string infer_request(uint64_t id, const InputTensor& t);
std::string shutdown_message();

// Returns the model name from a {"type":"ready"} reply.
std::string parse_ready(std::string_view line);
// Validates and decodes a {"type":"result"} reply for request `expected_id`.
InferenceOutput parse_result(std::string_view line, uint64_t expected_id);

}  // namespace wire

}  // namespace picobench

#endif  // PICOBENCH_BACKENDS_H_

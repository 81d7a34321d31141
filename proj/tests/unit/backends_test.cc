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

#include "picobench/backends.h"

#include <gtest/gtest.h>
#include <signal.h>

#include <chrono>
#include <random>
#include <thread>

#include "json.hpp"
#include "picobench/error.h"
#include "support/test_util.h"

namespace picobench {
namespace {

using testing::error_code_of;
using Clock = std::chrono::steady_clock;

InputTensor f32_tensor(std::vector<double> v) {
  const size_t n = v.size();
  return {{n}, std::move(v), DType::kF32, {}};
}

std::unique_ptr<SubprocessBackend> echo(std::vector<std::string> extra = {},
                                        int timeout_ms = 5000) {
  std::vector<std::string> args{testing::fixture("echo_runner.py").string()};
  args.insert(args.end(), extra.begin(), extra.end());
  return std::make_unique<SubprocessBackend>("python3", args, timeout_ms);
}

bool alive(int pid) { return ::kill(pid, 0) == 0; }

// --- synthetic -----------------------------------------------------------------

TEST(SyntheticTest, IdentityWeightsPickLargestInput) {
  SyntheticBackend b(3, 3, 0.0, 1);
  b.set_parameters({1, 0, 0, 0, 1, 0, 0, 0, 1}, {0, 0, 0});
  const auto out = b.infer(f32_tensor({0, 0, 1}));
  EXPECT_EQ(out.label, "class_2");
  EXPECT_EQ(out.confidence, 1.0);
  ASSERT_TRUE(out.raw_scores);
  EXPECT_EQ(*out.raw_scores, (std::vector<double>{0, 0, 1}));
}

TEST(SyntheticTest, TiesGoToLowestIndex) {
  SyntheticBackend b(3, 1, 0.0, 1);
  b.set_parameters({2, 5, 5}, {0, 0, 0});
  EXPECT_EQ(b.infer(f32_tensor({1})).label, "class_1");
  EXPECT_EQ(argmax({1, 1, 1}), 0u);
}

TEST(SyntheticTest, ParametersFollowDocumentedGenerator) {
  SyntheticBackend b(2, 3, 0.0, 42);
  std::mt19937_64 rng(42);
  auto draw = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  for (double w : b.weights()) EXPECT_EQ(w, draw());
  for (double c : b.bias()) EXPECT_EQ(c, draw());
  EXPECT_EQ(b.weights().size(), 6u);
  EXPECT_EQ(b.bias().size(), 2u);
}

TEST(SyntheticTest, RepeatedCallsAreIdentical) {
  SyntheticBackend b(4, 16, 0.0, 7);
  std::mt19937_64 rng(1);
  std::vector<double> x(16);
  for (double& v : x) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const auto t = f32_tensor(x);
  const auto first = b.infer(t);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(b.infer(t), first);
  SyntheticBackend again(4, 16, 0.0, 7);
  EXPECT_EQ(again.infer(t), first);
}

TEST(SyntheticTest, BusyWaitSetsLowerBound) {
  SyntheticBackend b(2, 1, 3.0, 1);
  const auto t = f32_tensor({0.5});
  for (int i = 0; i < 5; ++i) {
    const auto t0 = Clock::now();
    b.infer(t);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    EXPECT_GE(ms, 3.0);
  }
}

TEST(SyntheticTest, ShapeMismatchAndClosedHandle) {
  SyntheticBackend b(2, 4, 0.0, 1);
  EXPECT_EQ(error_code_of([&] { b.infer(f32_tensor({1, 2, 3})); }), ErrorCode::kShapeMismatch);
  b.close();
  b.close();
  EXPECT_EQ(error_code_of([&] { b.infer(f32_tensor({1, 2, 3, 4})); }),
            ErrorCode::kBackendCrashed);
}

// --- replay --------------------------------------------------------------------

TEST(ReplayTest, ServesTraceInOrderAndWraps) {
  std::vector<InferenceOutput> trace;
  for (int i = 0; i < 3; ++i) trace.push_back({"l" + std::to_string(i), i * 0.25, {}});
  ReplayBackend b(trace);
  const auto t = f32_tensor({0});
  for (int i = 0; i < 100; ++i) ASSERT_EQ(b.infer(t), trace[i % 3]);
}

TEST(ReplayTest, ReadsJsonLinesFile) {
  testing::TempDir dir;
  testing::write_text(dir / "trace.jsonl",
                      "{\"label\":\"yes\",\"confidence\":0.98}\n"
                      "\n"
                      "{\"label\":\"no\",\"confidence\":17.16,\"raw_scores\":[1,17.16]}\n");
  ReplayBackend b((dir / "trace.jsonl").string());
  EXPECT_EQ(b.size(), 2u);
  const auto t = f32_tensor({0});
  EXPECT_EQ(b.infer(t).confidence, 0.98);
  const auto second = b.infer(t);
  EXPECT_EQ(second.label, "no");
  EXPECT_EQ(second.raw_scores, (std::vector<double>{1, 17.16}));
  EXPECT_EQ(b.infer(t).label, "yes");
}

TEST(ReplayTest, Errors) {
  EXPECT_EQ(error_code_of([] { ReplayBackend("/nonexistent/trace.jsonl"); }),
            ErrorCode::kReplayFileMissing);
  testing::TempDir dir;
  testing::write_text(dir / "bad.jsonl", "{\"label\": 3}\n");
  EXPECT_EQ(error_code_of([&] { ReplayBackend((dir / "bad.jsonl").string()); }),
            ErrorCode::kParseError);
  testing::write_text(dir / "mismatch.jsonl",
                      "{\"label\":\"a\",\"confidence\":0.5,\"raw_scores\":[0.9,0.5]}\n");
  EXPECT_EQ(error_code_of([&] { ReplayBackend((dir / "mismatch.jsonl").string()); }),
            ErrorCode::kParseError);
}

// --- subprocess ------------------------------------------------------------------

TEST(SubprocessTest, EchoRunnerRoundTrip) {
  auto b = echo();
  EXPECT_EQ(b->model_name(), "echo");
  EXPECT_EQ(b->name(), "subprocess:echo");
  for (int i = 0; i < 20; ++i) {
    const auto out = b->infer(f32_tensor({1, 2, 3}));
    ASSERT_EQ(out.label, "yes");
    ASSERT_EQ(out.confidence, 0.99);
    ASSERT_FALSE(out.raw_scores);
  }
  InputTensor u8{{2, 2}, {0, 1, 2, 255}, DType::kU8, Quantization{1.0, 0}};
  EXPECT_EQ(b->infer(u8).label, "yes");
  b->close();
}

TEST(SubprocessTest, RawScoresArePassedThrough) {
  auto b = echo({"--raw-scores", "--confidence", "0.8"});
  const auto out = b->infer(f32_tensor({1}));
  EXPECT_EQ(out.raw_scores, (std::vector<double>{0.4, 0.8}));
}

TEST(SubprocessTest, SpawnFailures) {
  EXPECT_EQ(error_code_of([] {
              SubprocessBackend("/nonexistent/picobench-runner", {}, 1000);
            }),
            ErrorCode::kSpawnFailure);
  // Exits immediately without a handshake.
  EXPECT_EQ(error_code_of([] { SubprocessBackend("true", {}, 1000); }),
            ErrorCode::kSpawnFailure);
}

TEST(SubprocessTest, HandshakeTimeout) {
  const auto t0 = Clock::now();
  EXPECT_EQ(error_code_of([] { echo({"--no-handshake"}, 300); }),
            ErrorCode::kHandshakeTimeout);
  EXPECT_LT(Clock::now() - t0, std::chrono::seconds(5));
}

TEST(SubprocessTest, RequestTimeout) {
  auto b = echo({"--sleep-ms", "2000"}, 200);
  EXPECT_EQ(error_code_of([&] { b->infer(f32_tensor({1})); }), ErrorCode::kBackendTimeout);
}

TEST(SubprocessTest, ChildCrashMidRun) {
  auto b = echo({"--die-after", "3"});
  b->infer(f32_tensor({1}));
  b->infer(f32_tensor({1}));
  EXPECT_EQ(error_code_of([&] { b->infer(f32_tensor({1})); }), ErrorCode::kBackendCrashed);
}

TEST(SubprocessTest, GarbageReplyBreaksHandle) {
  auto b = echo({"--garbage-after", "1"});
  EXPECT_EQ(error_code_of([&] { b->infer(f32_tensor({1})); }), ErrorCode::kProtocolError);
  // Stream framing is unknown after a bad line; the handle refuses more work.
  EXPECT_TRUE(is_backend_error(error_code_of([&] { b->infer(f32_tensor({1})); })));
}

TEST(SubprocessTest, WrongIdIsProtocolError) {
  auto b = echo({"--wrong-id"});
  EXPECT_EQ(error_code_of([&] { b->infer(f32_tensor({1})); }), ErrorCode::kProtocolError);
}

TEST(SubprocessTest, CloseReapsChildAndIsIdempotent) {
  auto b = echo();
  const int pid = b->pid();
  ASSERT_GT(pid, 0);
  b->infer(f32_tensor({1}));
  b->close();
  EXPECT_FALSE(alive(pid));
  b->close();
  EXPECT_EQ(error_code_of([&] { b->infer(f32_tensor({1})); }), ErrorCode::kBackendCrashed);
}

TEST(SubprocessTest, StubbornChildIsKilled) {
  auto b = echo({"--ignore-shutdown"});
  const int pid = b->pid();
  const auto t0 = Clock::now();
  b->close();
  const auto waited = Clock::now() - t0;
  EXPECT_FALSE(alive(pid));
  EXPECT_GE(waited, std::chrono::milliseconds(1900));
  EXPECT_LT(waited, std::chrono::seconds(10));
}

TEST(SubprocessTest, DestructorReapsChild) {
  int pid = -1;
  {
    auto b = echo();
    pid = b->pid();
  }
  EXPECT_FALSE(alive(pid));
}

// --- wire ------------------------------------------------------------------------

TEST(WireTest, Base64KnownVectors) {
  auto enc = [](std::string s) {
    return wire::base64_encode(
        std::span(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
  };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foo"), "Zm9v");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
}

TEST(WireTest, Base64RoundTripsRandomBytes) {
  std::mt19937_64 rng(4);
  for (size_t n = 0; n < 300; ++n) {
    std::vector<uint8_t> bytes(n);
    for (auto& b : bytes) b = static_cast<uint8_t>(rng());
    ASSERT_EQ(wire::base64_decode(wire::base64_encode(bytes)), bytes);
  }
  EXPECT_EQ(error_code_of([] { wire::base64_decode("abc"); }), ErrorCode::kProtocolError);
}

TEST(WireTest, InferRequestShape) {
  const auto msg = nlohmann::json::parse(wire::infer_request(9, f32_tensor({1.0, -2.0})));
  EXPECT_EQ(msg["type"], "infer");
  EXPECT_EQ(msg["id"], 9);
  EXPECT_EQ(msg["dtype"], "f32");
  EXPECT_EQ(msg["shape"], nlohmann::json::array({2}));
  const auto payload = wire::base64_decode(msg["data"].get<std::string>());
  ASSERT_EQ(payload.size(), 8u);
  float f;
  std::memcpy(&f, payload.data() + 4, 4);
  EXPECT_EQ(f, -2.0f);
}

TEST(WireTest, ParseResultValidation) {
  const auto ok = wire::parse_result(
      R"({"type":"result","id":4,"label":"x","confidence":2.5})", 4);
  EXPECT_EQ(ok.label, "x");
  EXPECT_EQ(ok.confidence, 2.5);
  for (const char* bad : {R"({"type":"result","id":5,"label":"x","confidence":1})",
                          R"({"type":"ready","id":4})",
                          R"({"type":"result","id":4,"confidence":1})",
                          R"({"type":"result","id":4,"label":"x","confidence":"hi"})",
                          "not json"}) {
    EXPECT_EQ(error_code_of([&] { wire::parse_result(bad, 4); }), ErrorCode::kProtocolError)
        << bad;
  }
}

TEST(BackendLoadTest, BuildsEachKindAndValidates) {
  BackendSpec s;
  s.kind = BackendKind::kSynthetic;
  s.n_classes = 3;
  s.input_len = 2;
  auto a = backend_load(s, 5);
  s.seed = 5;
  auto b = backend_load(s, 999);
  const auto t = f32_tensor({0.3, -0.7});
  EXPECT_EQ(a->infer(t), b->infer(t));
  EXPECT_EQ(a->name(), "synthetic");

  s.n_classes = 0;
  EXPECT_EQ(error_code_of([&] { s.validate(); }), ErrorCode::kConfigError);

  BackendSpec r;
  r.kind = BackendKind::kReplay;
  EXPECT_EQ(error_code_of([&] { backend_load(r); }), ErrorCode::kConfigError);

  EXPECT_EQ(backend_kind_from_string("subprocess"), BackendKind::kSubprocess);
  EXPECT_FALSE(backend_kind_from_string("tflite"));
}

}  // namespace
}  // namespace picobench

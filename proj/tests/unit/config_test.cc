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

#include "picobench/config.h"

#include <gtest/gtest.h>

#include "picobench/error.h"
#include "support/test_util.h"

namespace picobench {
namespace {

using testing::TempDir;

std::string config_error_of(std::string_view text) {
  try {
    parse_config(text, "/base");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
    return e.detail();
  }
  ADD_FAILURE() << "expected ConfigError";
  return {};
}

constexpr std::string_view kMinimal = R"(
model_id = "m"
manifest = "data/manifest.json"
[backend]
kind = "synthetic"
n_classes = 4
input_len = 16
)";

TEST(ConfigTest, MinimalUsesDefaults) {
  const auto c = parse_config(kMinimal, "/base");
  EXPECT_EQ(c.model_id, "m");
  EXPECT_EQ(c.manifest_path, "/base/data/manifest.json");
  EXPECT_EQ(c.iterations, 100);
  EXPECT_EQ(c.warmup, 5);
  EXPECT_EQ(c.backend.kind, BackendKind::kSynthetic);
  EXPECT_EQ(c.backend.n_classes, 4);
  EXPECT_EQ(c.backend.input_len, 16u);
  EXPECT_FALSE(c.backend.seed);
  EXPECT_FALSE(c.preprocess.quantization);
}

TEST(ConfigTest, FullDocument) {
  const auto c = parse_config(R"(
# comment line
model_id = 'kw'   # trailing comment
platform_label = "rpi4"
manifest = "/abs/m.json"
iterations = 20
warmup = 0
seed = 18446744073709551615

[backend]
kind = "subprocess"
command = "python3"
args = ["runner.py", "--model", "a b"]
timeout_ms = 250

[preprocess.image]
resize_h = 96
resize_w = 96
mean = [0.485, 0.456, 0.406]
std = [0.229, 0.224, 0.225]

[preprocess.audio]
frame_len = 256
hop_len = 128
log_floor = 1e-12

[preprocess.quantization]
scale = 0.0078125
zero_point = 128
)",
                              "/base");
  EXPECT_EQ(c.platform_label, "rpi4");
  EXPECT_EQ(c.manifest_path, "/abs/m.json");
  EXPECT_EQ(c.seed, 18446744073709551615ull);
  EXPECT_EQ(c.backend.command, "python3");
  EXPECT_EQ(c.backend.args, (std::vector<std::string>{"runner.py", "--model", "a b"}));
  EXPECT_EQ(c.backend.timeout_ms, 250);
  EXPECT_EQ(c.preprocess.image.resize_h, 96u);
  EXPECT_EQ(c.preprocess.image.stddev, (std::vector<double>{0.229, 0.224, 0.225}));
  EXPECT_EQ(c.preprocess.audio.frame_len, 256u);
  EXPECT_EQ(c.preprocess.audio.log_floor, 1e-12);
  ASSERT_TRUE(c.preprocess.quantization);
  EXPECT_EQ(c.preprocess.quantization->scale, 0.0078125);
  EXPECT_EQ(c.preprocess.quantization->zero_point, 128);
}

TEST(ConfigTest, ReplayPathResolvesAgainstBase) {
  const auto c = parse_config(R"(
model_id = "m"
manifest = "m.json"
[backend]
kind = "replay"
path = "traces/t.jsonl"
)",
                              "/cfg");
  EXPECT_EQ(c.backend.path, "/cfg/traces/t.jsonl");
}

TEST(ConfigTest, MissingBackendKindNamesField) {
  EXPECT_NE(config_error_of("model_id = \"m\"\nmanifest = \"x\"\n[backend]\nn_classes = 2\n")
                .find("backend.kind"),
            std::string::npos);
  EXPECT_NE(config_error_of("model_id = \"m\"\nmanifest = \"x\"\n").find("backend.kind"),
            std::string::npos);
}

TEST(ConfigTest, RejectsBadDocuments) {
  const std::string base(kMinimal);
  EXPECT_NE(config_error_of(base + "bogus = 1\n").find("bogus"), std::string::npos);
  EXPECT_NE(config_error_of(base + "n_classes = 5\n").find("duplicate"), std::string::npos);
  EXPECT_NE(config_error_of("model_id = \"m\nmanifest = \"x\"\n").find("line 1"),
            std::string::npos);
  EXPECT_NE(config_error_of(base + "[preprocess.image]\nresize_h = \"big\"\n").find("resize_h"),
            std::string::npos);
  EXPECT_NE(config_error_of(base + "[preprocess.image]\nmean = [[1]]\n").find("nested"),
            std::string::npos);
  EXPECT_FALSE(config_error_of("model_id = \"m\"\nmanifest = \"x\"\n[backend]\nkind = \"tflite\"\n")
                   .empty());
  EXPECT_NE(config_error_of("manifest = \"x\"\n[backend]\nkind = \"synthetic\"\n").find("model_id"),
            std::string::npos);
  EXPECT_NE(config_error_of(std::string(kMinimal).replace(1, 0, "iterations = 0\n"))
                .find("iterations"),
            std::string::npos);
  // Fields of another backend kind are unknown here.
  EXPECT_NE(config_error_of(base + "command = \"x\"\n").find("command"), std::string::npos);
}

TEST(ConfigTest, LoadsFilesAndResolvesAgainstTheirDirectory) {
  TempDir dir;
  testing::write_text(dir / "b.toml", std::string(kMinimal));
  const auto c = load_config(dir / "b.toml");
  EXPECT_EQ(c.manifest_path, (dir / "data/manifest.json").string());
  EXPECT_EQ(testing::error_code_of([&] { load_config(dir / "missing.toml"); }),
            ErrorCode::kConfigError);
}

TEST(ConfigTest, BundledConfigsParse) {
  const auto syn = load_config(testing::data_dir() / "synthetic/benchmark.toml");
  EXPECT_EQ(syn.backend.n_classes, 4);
  EXPECT_EQ(syn.preprocess.image.mean, std::vector<double>{127.5});
  const auto kw = load_config(testing::data_dir() / "keyword/benchmark.toml");
  EXPECT_EQ(kw.backend.input_len, 61u * 257u);
}

}  // namespace
}  // namespace picobench

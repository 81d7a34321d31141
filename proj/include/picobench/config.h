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

// Benchmark configuration files.
//
// A TOML subset: `key = value` lines grouped under [table] headers, with
// strings ("..." or '...'), integers, floats, booleans and single-line arrays
// of those. `#` starts a comment. Recognized keys:
//
//   model_id, platform_label, manifest, iterations, warmup, seed
//   [backend]                 kind, n_classes, input_len, busy_ms, seed,
//                             command, args, timeout_ms, path
//   [preprocess.image]        resize_h, resize_w, mean, std
//   [preprocess.audio]        frame_len, hop_len, log_floor
//   [preprocess.quantization] scale, zero_point
//
// Relative manifest and replay paths resolve against the config file's
// directory. Unknown keys are rejected.

#ifndef PICOBENCH_CONFIG_H_
#define PICOBENCH_CONFIG_H_

#include <filesystem>
#include <string_view>

#include "picobench/result.h"

namespace picobench {

// Throws ConfigError naming the offending field or line.
BenchmarkConfig parse_config(std::string_view text,
                             const std::filesystem::path& base_dir);
BenchmarkConfig load_config(const std::filesystem::path& path);

}  // namespace picobench

#endif  // PICOBENCH_CONFIG_H_

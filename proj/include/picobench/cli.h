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

// picobench command-line interface.
//
// Every failure prints one stderr line starting with "PICO-Exxx:"; results
// and tables go to stdout only.
//
//   E001  configuration, manifest or preprocessing error     exit 1
//   E002  backend failure (partial results flushed)          exit 2
//   E003  file system I/O error                              exit 3
//   E004  result file parse or schema error                  exit 1
//   E005  manifest validation failed                         exit 1
//   E006  command-line usage error                           exit 1
//   E007  required metric missing                            exit 1
//   E008  system counters unavailable                        exit 3

#ifndef PICOBENCH_CLI_H_
#define PICOBENCH_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "picobench/stats.h"

namespace picobench::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitBackend = 2,
  kExitIo = 3,
};

struct RunArgs {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<int> iterations;
  std::optional<int> warmup;
  std::optional<uint64_t> seed;
};

// Writes <out> (JSON) and the CSV beside it; on a backend failure the
// records gathered so far go to <out>.partial.
int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);

// Renders one SVG per chart kind into `charts_dir` and prints summaries.
int cmd_report(const std::filesystem::path& result,
               const std::filesystem::path& charts_dir, std::ostream& out,
               std::ostream& err);

// Prints the comparison table and writes <A stem>_vs_<B stem>.compare.json
// next to `a`.
int cmd_compare(const std::filesystem::path& a, const std::filesystem::path& b,
                CpuAggregation cpu, std::ostream& out, std::ostream& err);

int cmd_validate(const std::filesystem::path& manifest, std::ostream& out,
                 std::ostream& err);

std::filesystem::path csv_path_for(const std::filesystem::path& json_path);
std::filesystem::path partial_path_for(const std::filesystem::path& json_path);
std::filesystem::path comparison_path_for(const std::filesystem::path& a,
                                          const std::filesystem::path& b);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace picobench::cli

#endif  // PICOBENCH_CLI_H_

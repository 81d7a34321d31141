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

#include "picobench/cli.h"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "picobench/config.h"
#include "picobench/error.h"
#include "picobench/report.h"
#include "picobench/runner.h"

namespace picobench::cli {
namespace {

struct Failure {
  const char* tag;
  int exit_code;
};

Failure classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kManifestParseError:
    case ErrorCode::kMissingSampleFile:
    case ErrorCode::kPreprocessError:
    case ErrorCode::kInvalidArgument:
      return {"PICO-E001", kExitConfig};
    case ErrorCode::kIoError:
      return {"PICO-E003", kExitIo};
    case ErrorCode::kParseError:
    case ErrorCode::kSchemaVersionMismatch:
      return {"PICO-E004", kExitConfig};
    case ErrorCode::kMissingMetric:
    case ErrorCode::kEmptySeries:
    case ErrorCode::kNonFiniteValue:
      return {"PICO-E007", kExitConfig};
    case ErrorCode::kCounterSourceUnavailable:
      return {"PICO-E008", kExitIo};
    default:
      if (is_backend_error(code)) return {"PICO-E002", kExitBackend};
      return {"PICO-E001", kExitConfig};
  }
}

int fail(std::ostream& err, const Error& e) {
  const Failure f = classify(e.code());
  err << f.tag << ": " << e.what() << '\n';
  return f.exit_code;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

void print_summaries(const RunResult& r, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %6s %12s %12s %12s %12s %12s %12s\n",
                "metric", "count", "mean", "std", "min", "p50", "p95", "max");
  out << line;
  for (const auto& [metric, s] : r.summaries) {
    std::snprintf(line, sizeof(line),
                  "%-12s %6zu %12.4f %12.4f %12.4f %12.4f %12.4f %12.4f\n",
                  metric.c_str(), s.count, s.mean, s.std, s.min, s.p50, s.p95, s.max);
    out << line;
  }
}

void print_run_summary(const RunResult& r, std::ostream& out) {
  const auto* lat = r.summary(kLatencyMetric);
  const auto* cpu = r.summary(kCpuMetric);
  const auto* mem = r.summary(kMemMetric);
  out << "model:            " << r.config.model_id << '\n'
      << "platform:         " << r.platform.label << " (" << r.platform.cpu_model
      << ", " << r.platform.cores << " cores)\n"
      << "iterations:       " << r.records.size() << '\n'
      << "latency mean ms:  " << (lat ? fmt("%.4f", lat->mean) : "n/a") << '\n'
      << "latency p95 ms:   " << (lat ? fmt("%.4f", lat->p95) : "n/a") << '\n'
      << "cpu mean %:       " << (cpu ? fmt("%.2f", cpu->mean) : "n/a") << '\n'
      << "cpu whole run %:  "
      << (r.cpu_pct_run ? fmt("%.2f", *r.cpu_pct_run) : "n/a") << '\n'
      << "memory mean %:    " << (mem ? fmt("%.2f", mem->mean) : "n/a") << '\n';
}

}  // namespace

std::filesystem::path csv_path_for(const std::filesystem::path& json_path) {
  auto p = json_path;
  if (p.extension() == ".json") return p.replace_extension(".csv");
  return std::filesystem::path(p.string() + ".csv");
}

std::filesystem::path partial_path_for(const std::filesystem::path& json_path) {
  return std::filesystem::path(json_path.string() + ".partial");
}

std::filesystem::path comparison_path_for(const std::filesystem::path& a,
                                          const std::filesystem::path& b) {
  return a.parent_path() /
         (a.stem().string() + "_vs_" + b.stem().string() + ".compare.json");
}

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  BenchmarkConfig cfg;
  try {
    cfg = load_config(args.config);
    if (args.iterations) cfg.iterations = *args.iterations;
    if (args.warmup) cfg.warmup = *args.warmup;
    if (args.seed) cfg.seed = *args.seed;
    if (cfg.iterations < 1) throw Error(ErrorCode::kConfigError, "iterations must be >= 1");
    if (cfg.warmup < 0) throw Error(ErrorCode::kConfigError, "warmup must be >= 0");
  } catch (const Error& e) {
    return fail(err, e);
  }

  RunOptions options;
  options.counters = CounterSource::from_environment();
  options.platform.meminfo_path = options.counters.meminfo_path;
  options.partial_path = partial_path_for(args.out);
  options.log = &err;

  try {
    const RunResult result = run_benchmark(cfg, options);
    write_result_json(result, args.out);
    write_result_csv(result, csv_path_for(args.out));
    std::error_code ec;
    std::filesystem::remove(*options.partial_path, ec);
    print_run_summary(result, out);
  } catch (const Error& e) {
    return fail(err, e);
  }
  return kExitOk;
}

int cmd_report(const std::filesystem::path& result_path,
               const std::filesystem::path& charts_dir, std::ostream& out,
               std::ostream& err) {
  RunResult r;
  try {
    r = read_result_json(result_path);
  } catch (const Error& e) {
    return fail(err, e);
  }

  std::error_code ec;
  std::filesystem::create_directories(charts_dir, ec);
  if (ec) {
    err << "PICO-E003: cannot create " << charts_dir.string() << ": "
        << ec.message() << '\n';
    return kExitIo;
  }

  for (ChartKind kind : kAllChartKinds) {
    ChartSpec spec;
    spec.kind = kind;
    spec.title = r.config.model_id + " on " + r.platform.label + ": " +
                 std::string(to_string(kind));
    const auto path = charts_dir / (std::string(to_string(kind)) + ".svg");
    try {
      render_chart(r, spec, path);
      out << "wrote " << path.string() << '\n';
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMissingMetric) return fail(err, e);
      err << "PICO-W002: skipped " << to_string(kind) << ": " << e.what() << '\n';
    }
  }

  print_summaries(r, out);
  if (!r.records.empty()) {
    const StabilityReport st = stability(r.records);
    out << "distinct labels: " << st.distinct_labels
        << "  confidence mean " << fmt("%.4f", st.confidence_mean) << " std "
        << fmt("%.4f", st.confidence_std) << '\n';
  }
  return kExitOk;
}

int cmd_compare(const std::filesystem::path& a, const std::filesystem::path& b,
                CpuAggregation cpu, std::ostream& out, std::ostream& err) {
  try {
    const RunResult ra = read_result_json(a);
    const RunResult rb = read_result_json(b);
    const ComparisonReport report = compare(ra, rb, cpu);
    for (const auto& w : report.warnings) err << "PICO-W003: " << w << '\n';
    out << comparison_to_table(report);
    write_text_file(comparison_path_for(a, b), comparison_to_json(report));
  } catch (const Error& e) {
    return fail(err, e);
  }
  return kExitOk;
}

int cmd_validate(const std::filesystem::path& manifest, std::ostream& out,
                 std::ostream& err) {
  Dataset ds;
  try {
    ds = load_manifest(manifest, /*check_files=*/false);
  } catch (const Error& e) {
    return fail(err, e);
  }
  size_t failures = 0;
  for (const auto& s : ds.samples) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(s.path, ec)) {
      out << "FAIL " << s.id << ": MissingSampleFile: " << s.path.string() << '\n';
      ++failures;
      continue;
    }
    try {
      prepare_sample(s, PreprocessParams{});
      out << "OK   " << s.id << '\n';
    } catch (const Error& e) {
      out << "FAIL " << s.id << ": " << e.detail() << '\n';
      ++failures;
    }
  }
  if (failures > 0) {
    err << "PICO-E005: " << failures << " of " << ds.samples.size()
        << " samples failed validation\n";
    return kExitConfig;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"picobench: inference latency and resource benchmarking harness"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Execute a benchmark described by a config file");
  run_cmd->add_option("config", run_args.config, "Config file")->required();
  run_cmd->add_option("--out,-o", run_args.out, "Result JSON path")->required();
  run_cmd->add_option("--iterations", run_args.iterations, "Measured iterations");
  run_cmd->add_option("--warmup", run_args.warmup, "Warmup iterations");
  run_cmd->add_option("--seed", run_args.seed, "Run seed");

  std::filesystem::path report_result;
  std::filesystem::path charts_dir = "charts";
  auto* report_cmd = app.add_subcommand("report", "Render charts and summaries for a result");
  report_cmd->add_option("result", report_result, "Result JSON")->required();
  report_cmd->add_option("--charts", charts_dir, "Output directory for SVG charts");

  std::filesystem::path cmp_a;
  std::filesystem::path cmp_b;
  std::string cpu_source = "iteration";
  auto* compare_cmd = app.add_subcommand("compare", "Compare two results");
  compare_cmd->add_option("result_a", cmp_a, "First result JSON")->required();
  compare_cmd->add_option("result_b", cmp_b, "Second result JSON")->required();
  compare_cmd
      ->add_option("--cpu-source", cpu_source,
                   "CPU figure to compare: per-iteration mean or whole-run window")
      ->check(CLI::IsMember({"iteration", "run"}));

  std::filesystem::path manifest;
  auto* validate_cmd = app.add_subcommand("validate", "Check that every manifest sample decodes");
  validate_cmd->add_option("manifest", manifest, "Manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "PICO-E006: " << e.what() << '\n';
    return kExitConfig;
  }

  if (*run_cmd) return cmd_run(run_args, out, err);
  if (*report_cmd) return cmd_report(report_result, charts_dir, out, err);
  if (*compare_cmd) {
    return cmd_compare(cmp_a, cmp_b,
                       cpu_source == "run" ? CpuAggregation::kWholeRun
                                           : CpuAggregation::kIterationMean,
                       out, err);
  }
  return cmd_validate(manifest, out, err);
}

}  // namespace picobench::cli

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

#include <pybind11/complex.h>
#include <pybind11/gil_safe_call_once.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "picobench/cli.h"
#include "picobench/config.h"
#include "picobench/error.h"
#include "picobench/media_io.h"
#include "picobench/preprocess.h"
#include "picobench/report.h"
#include "picobench/runner.h"
#include "picobench/stats.h"
#include "picobench/sysmon.h"

namespace py = pybind11;
using namespace picobench;

namespace {

ChartKind chart_kind_from_string(const std::string& name) {
  for (ChartKind k : kAllChartKinds) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown chart kind '" + name + "'");
}

CpuAggregation cpu_aggregation_from_string(const std::string& name) {
  if (name == "iteration") return CpuAggregation::kIterationMean;
  if (name == "run") return CpuAggregation::kWholeRun;
  throw Error(ErrorCode::kInvalidArgument, "cpu must be 'iteration' or 'run'");
}

}  // namespace

PYBIND11_MODULE(_picobench, m) {
  m.doc() = "Inference benchmarking core: counters, preprocessing, statistics, reports.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&] { return py::object(py::exception<Error>(m, "PicobenchError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error_type.get_stored();
      py::object err = type(py::str(e.what()));
      err.attr("code") = py::str(std::string(to_string(e.code())));
      PyErr_SetObject(type.ptr(), err.ptr());
    }
  });

  // sysmon
  py::class_<CpuSnapshot>(m, "CpuSnapshot")
      .def(py::init<>())
      .def_readwrite("user", &CpuSnapshot::user)
      .def_readwrite("nice", &CpuSnapshot::nice)
      .def_readwrite("system", &CpuSnapshot::system)
      .def_readwrite("idle", &CpuSnapshot::idle)
      .def_readwrite("iowait", &CpuSnapshot::iowait)
      .def_readwrite("irq", &CpuSnapshot::irq)
      .def_readwrite("softirq", &CpuSnapshot::softirq)
      .def_readwrite("steal", &CpuSnapshot::steal)
      .def_readwrite("timestamp_ns", &CpuSnapshot::timestamp_ns)
      .def("total", &CpuSnapshot::total);
  m.def("parse_cpu_stat", &parse_cpu_stat, py::arg("contents"));
  m.def("read_cpu_snapshot", [] { return read_cpu_snapshot(CounterSource::from_environment()); });
  m.def("cpu_utilization", &cpu_utilization, py::arg("a"), py::arg("b"));
  m.def("try_cpu_utilization", &try_cpu_utilization, py::arg("a"), py::arg("b"));
  m.def(
      "memory_utilization",
      [](uint64_t total_kb, uint64_t available_kb) {
        return memory_utilization({total_kb, available_kb, 0});
      },
      py::arg("total_kb"), py::arg("available_kb"));
  m.def("parse_meminfo", [](std::string_view text) {
    const auto s = parse_meminfo(text);
    return py::make_tuple(s.total_kb, s.available_kb);
  });

  // preprocess
  py::class_<ImageTensor>(m, "ImageTensor")
      .def(py::init([](size_t h, size_t w, size_t c, std::vector<double> data) {
             if (data.size() != h * w * c) {
               throw Error(ErrorCode::kInvalidArgument, "data size must be h*w*c");
             }
             return ImageTensor{h, w, c, std::move(data)};
           }),
           py::arg("height"), py::arg("width"), py::arg("channels"), py::arg("data"))
      .def_readonly("height", &ImageTensor::height)
      .def_readonly("width", &ImageTensor::width)
      .def_readonly("channels", &ImageTensor::channels)
      .def_readonly("data", &ImageTensor::data)
      .def("at", &ImageTensor::at);
  m.def("resize_bilinear", &resize_bilinear, py::arg("image"), py::arg("out_h"), py::arg("out_w"));
  m.def(
      "normalize",
      [](const ImageTensor& img, std::vector<double> mean, std::vector<double> stddev) {
        return normalize(img, mean, stddev);
      },
      py::arg("image"), py::arg("mean"), py::arg("std"));
  m.def(
      "fft", [](std::vector<std::complex<double>> x) { return fft(x); }, py::arg("x"));
  m.def(
      "ifft", [](std::vector<std::complex<double>> x) { return ifft(x); }, py::arg("x"));
  m.def("hann_window", &hann_window, py::arg("n"));
  m.def(
      "stft_log_power",
      [](std::vector<double> samples, int sample_rate_hz, size_t frame_len, size_t hop_len,
         double log_floor) {
        const auto s = stft_log_power({sample_rate_hz, std::move(samples)}, frame_len, hop_len,
                                      log_floor);
        py::list rows;
        for (size_t f = 0; f < s.n_frames; ++f) {
          rows.append(std::vector<double>(s.values.begin() + f * s.n_bins,
                                          s.values.begin() + (f + 1) * s.n_bins));
        }
        return rows;
      },
      py::arg("samples"), py::arg("sample_rate_hz") = 16000,
      py::arg("frame_len") = kDefaultFrameLen, py::arg("hop_len") = kDefaultHopLen,
      py::arg("log_floor") = kDefaultLogFloor,
      "Log10 power spectrogram as a list of frames, each frame_len/2+1 bins.");
  m.def(
      "quantize",
      [](std::vector<double> values, double scale, int zero_point) {
        const size_t n = values.size();
        return quantize({{n}, std::move(values), DType::kF32, Quantization{scale, zero_point}})
            .data;
      },
      py::arg("values"), py::arg("scale"), py::arg("zero_point"));
  m.def(
      "decode_wav",
      [](py::bytes data) {
        const std::string s = data;
        const auto clip = decode_wav_pcm16(
            std::span(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
        return py::make_tuple(clip.sample_rate_hz, clip.samples);
      },
      py::arg("data"), "Returns (sample_rate_hz, samples in [-1, 1)).");

  // stats and results
  py::class_<MetricSummary>(m, "MetricSummary")
      .def_readonly("count", &MetricSummary::count)
      .def_readonly("mean", &MetricSummary::mean)
      .def_readonly("std", &MetricSummary::std)
      .def_readonly("min", &MetricSummary::min)
      .def_readonly("max", &MetricSummary::max)
      .def_readonly("p50", &MetricSummary::p50)
      .def_readonly("p90", &MetricSummary::p90)
      .def_readonly("p95", &MetricSummary::p95)
      .def_readonly("p99", &MetricSummary::p99)
      .def("__repr__", [](const MetricSummary& s) {
        std::ostringstream os;
        os << "MetricSummary(count=" << s.count << ", mean=" << s.mean << ", std=" << s.std
           << ", p50=" << s.p50 << ", p99=" << s.p99 << ")";
        return os.str();
      });
  m.def(
      "summarize", [](std::vector<double> v) { return summarize(v); }, py::arg("values"));

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("index", &IterationRecord::index)
      .def_readonly("sample_id", &IterationRecord::sample_id)
      .def_readonly("latency_ms", &IterationRecord::latency_ms)
      .def_readonly("cpu_pct", &IterationRecord::cpu_pct)
      .def_readonly("mem_pct_before", &IterationRecord::mem_pct_before)
      .def_readonly("mem_pct_after", &IterationRecord::mem_pct_after)
      .def_readonly("predicted_label", &IterationRecord::predicted_label)
      .def_readonly("confidence", &IterationRecord::confidence);

  py::class_<PlatformInfo>(m, "PlatformInfo")
      .def_readonly("label", &PlatformInfo::label)
      .def_readonly("os", &PlatformInfo::os)
      .def_readonly("cpu_model", &PlatformInfo::cpu_model)
      .def_readonly("cores", &PlatformInfo::cores)
      .def_readonly("total_memory_kb", &PlatformInfo::total_memory_kb);

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("model_id", [](const RunResult& r) { return r.config.model_id; })
      .def_property_readonly("iterations", [](const RunResult& r) { return r.config.iterations; })
      .def_readonly("platform", &RunResult::platform)
      .def_readonly("started_at_unix_ms", &RunResult::started_at_unix_ms)
      .def_readonly("cpu_pct_run", &RunResult::cpu_pct_run)
      .def_readonly("records", &RunResult::records)
      .def_property_readonly("summaries",
                             [](const RunResult& r) {
                               return std::map<std::string, MetricSummary>(r.summaries.begin(),
                                                                           r.summaries.end());
                             })
      .def("to_json", &result_to_json)
      .def("to_csv", &result_to_csv)
      .def("__eq__", [](const RunResult& a, const RunResult& b) { return a == b; });
  m.def("read_result", &read_result_json, py::arg("path"));
  m.def("write_result", &write_result_json, py::arg("result"), py::arg("path"));
  m.def("result_from_json", &result_from_json, py::arg("text"));

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("confidence_mean", &StabilityReport::confidence_mean)
      .def_readonly("confidence_std", &StabilityReport::confidence_std)
      .def_readonly("label_histogram", &StabilityReport::label_histogram)
      .def_readonly("distinct_labels", &StabilityReport::distinct_labels);
  m.def(
      "stability", [](const RunResult& r) { return stability(r.records); }, py::arg("result"));

  py::class_<ComparisonEntry>(m, "ComparisonEntry")
      .def_readonly("metric", &ComparisonEntry::metric)
      .def_readonly("a", &ComparisonEntry::value_a)
      .def_readonly("b", &ComparisonEntry::value_b)
      .def_readonly("ratio", &ComparisonEntry::ratio)
      .def_readonly("delta", &ComparisonEntry::delta);
  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("entries", &ComparisonReport::entries)
      .def_readonly("warnings", &ComparisonReport::warnings)
      .def("entry",
           [](const ComparisonReport& r, const std::string& metric) -> py::object {
             const auto* e = r.entry(metric);
             return e ? py::cast(*e) : py::none();
           })
      .def("to_table", &comparison_to_table)
      .def("to_json", &comparison_to_json);
  m.def(
      "compare",
      [](const RunResult& a, const RunResult& b, const std::string& cpu) {
        return compare(a, b, cpu_aggregation_from_string(cpu));
      },
      py::arg("a"), py::arg("b"), py::arg("cpu") = "iteration");

  m.def(
      "render_chart",
      [](const RunResult& r, const std::string& kind, const std::string& title, int width,
         int height, int bins) {
        ChartSpec spec{chart_kind_from_string(kind), title, width, height, bins};
        return render_chart_svg(r, spec);
      },
      py::arg("result"), py::arg("kind"), py::arg("title") = "", py::arg("width") = 800,
      py::arg("height") = 500, py::arg("bins") = 20, "Returns the SVG document as a string.");
  m.attr("CHART_KINDS") = [] {
    py::list out;
    for (ChartKind k : kAllChartKinds) out.append(std::string(to_string(k)));
    return out;
  }();

  // runner
  m.def(
      "run_benchmark",
      [](const std::filesystem::path& config, std::optional<int> iterations,
         std::optional<int> warmup, std::optional<uint64_t> seed) {
        BenchmarkConfig cfg = load_config(config);
        if (iterations) cfg.iterations = *iterations;
        if (warmup) cfg.warmup = *warmup;
        if (seed) cfg.seed = *seed;
        RunOptions opts;
        opts.counters = CounterSource::from_environment();
        py::gil_scoped_release release;
        return run_benchmark(cfg, opts);
      },
      py::arg("config"), py::arg("iterations") = py::none(), py::arg("warmup") = py::none(),
      py::arg("seed") = py::none());
  m.def(
      "validate_manifest",
      [](const std::filesystem::path& manifest) {
        const auto ds = load_manifest(manifest, false);
        py::dict out;
        for (const auto& s : ds.samples) {
          try {
            prepare_sample(s, PreprocessParams{});
            out[py::str(s.id)] = py::none();
          } catch (const Error& e) {
            out[py::str(s.id)] = py::str(e.what());
          }
        }
        return out;
      },
      py::arg("manifest"), "Maps sample id to None (ok) or the failure message.");

  m.def(
      "cli_main",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "picobench");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the CLI in-process; returns (exit_code, stdout, stderr).");
}

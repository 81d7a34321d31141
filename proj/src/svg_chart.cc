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
#include <cmath>
#include <cstdio>
#include <map>

#include "picobench/error.h"
#include "picobench/report.h"
#include "picobench/stats.h"

namespace picobench {

std::string_view to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::kLatencyHistogram: return "latency_histogram";
    case ChartKind::kMetricTrend: return "metric_trend";
    case ChartKind::kConfidenceTrend: return "confidence_trend";
    case ChartKind::kPredictionBar: return "prediction_bar";
  }
  return "unknown";
}

void ChartSpec::validate() const {
  if (width < 100 || height < 100) {
    throw Error(ErrorCode::kInvalidArgument, "chart must be at least 100x100");
  }
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "bins must be >= 1");
}

Histogram histogram(std::span<const double> values, int bins) {
  if (values.empty()) throw Error(ErrorCode::kEmptySeries, "no values");
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "bins must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  Histogram h{*lo_it, *hi_it, {}};
  if (h.lo == h.hi) {
    h.counts = {values.size()};
    return h;
  }
  h.counts.assign(static_cast<size_t>(bins), 0);
  const double width = (h.hi - h.lo) / bins;
  for (double v : values) {
    auto idx = static_cast<size_t>(std::floor((v - h.lo) / width));
    ++h.counts[std::min(idx, h.counts.size() - 1)];
  }
  return h;
}

namespace {

constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 50.0;
constexpr const char* kBarFill = "#4C72B0";
constexpr const char* kSeriesColors[] = {"#C44E52", "#55A868"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters other than tab/newline are not legal XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n') {
          out += ' ';
        } else {
          out += c;
        }
    }
  }
  return out;
}

class SvgCanvas {
 public:
  SvgCanvas(const ChartSpec& spec, std::string_view default_title)
      : width_(spec.width), height_(spec.height) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
            std::to_string(width_) + "\" height=\"" + std::to_string(height_) +
            "\" viewBox=\"0 0 " + std::to_string(width_) + " " +
            std::to_string(height_) + "\" font-family=\"sans-serif\">\n";
    out_ += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" +
            std::to_string(width_) + "\" height=\"" + std::to_string(height_) +
            "\" fill=\"white\"/>\n";
    const std::string title =
        spec.title.empty() ? std::string(default_title) : spec.title;
    text(width_ / 2.0, kTop / 2.0 + 6.0, title, "middle", 16);
  }

  double plot_left() const { return kLeft; }
  double plot_right() const { return width_ - kRight; }
  double plot_top() const { return kTop; }
  double plot_bottom() const { return height_ - kBottom; }
  double plot_width() const { return plot_right() - plot_left(); }
  double plot_height() const { return plot_bottom() - plot_top(); }

  void axes(std::string_view x_label, std::string_view y_label) {
    line(plot_left(), plot_bottom(), plot_right(), plot_bottom(), "axis");
    line(plot_left(), plot_top(), plot_left(), plot_bottom(), "axis");
    text((plot_left() + plot_right()) / 2.0, height_ - 12.0, x_label, "middle", 12);
    out_ += "<text class=\"axis-label\" transform=\"translate(16," +
            num((plot_top() + plot_bottom()) / 2.0) +
            ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" +
            escape_xml(y_label) + "</text>\n";
  }

  void y_ticks(double lo, double hi) {
    text(plot_left() - 6.0, plot_bottom() + 4.0, label_num(lo), "end", 10);
    text(plot_left() - 6.0, plot_top() + 4.0, label_num(hi), "end", 10);
  }

  void x_ticks(const std::string& lo, const std::string& hi) {
    text(plot_left(), plot_bottom() + 16.0, lo, "start", 10);
    text(plot_right(), plot_bottom() + 16.0, hi, "end", 10);
  }

  void line(double x1, double y1, double x2, double y2, std::string_view cls) {
    out_ += "<line class=\"" + std::string(cls) + "\" x1=\"" + num(x1) +
            "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
            "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }

  void bar(double x, double y, double w, double h, size_t count,
           std::string_view extra_attrs) {
    out_ += "<rect class=\"bar\" x=\"" + num(x) + "\" y=\"" + num(y) +
            "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"" +
            kBarFill + "\" data-count=\"" + std::to_string(count) + "\"" +
            std::string(extra_attrs) + "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& points,
                std::string_view series, const char* color) {
    out_ += "<polyline class=\"series\" data-series=\"" + escape_xml(series) +
            "\" fill=\"none\" stroke=\"" + color +
            "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < points.size(); ++i) {
      if (i) out_ += ' ';
      out_ += num(points[i].first) + "," + num(points[i].second);
    }
    out_ += "\"/>\n";
  }

  void text(double x, double y, std::string_view s, std::string_view anchor,
            int size) {
    out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" +
            std::string(anchor) + "\" font-size=\"" + std::to_string(size) +
            "\">" + escape_xml(s) + "</text>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  int width_;
  int height_;
  std::string out_;
};

[[noreturn]] void missing(std::string_view metric) {
  throw Error(ErrorCode::kMissingMetric, std::string(metric) + " has no values");
}

std::string render_histogram(const RunResult& r, const ChartSpec& spec) {
  std::vector<double> latency;
  for (const auto& rec : r.records) latency.push_back(rec.latency_ms);
  if (latency.empty()) missing(kLatencyMetric);
  const Histogram h = histogram(latency, spec.bins);
  const size_t peak = *std::max_element(h.counts.begin(), h.counts.end());

  SvgCanvas svg(spec, "Latency distribution");
  const double bin_w = svg.plot_width() / static_cast<double>(h.counts.size());
  const double step = h.counts.size() > 1
                          ? (h.hi - h.lo) / static_cast<double>(h.counts.size())
                          : 0.0;
  for (size_t i = 0; i < h.counts.size(); ++i) {
    const double bar_h = svg.plot_height() * static_cast<double>(h.counts[i]) /
                         static_cast<double>(peak);
    const double lo = h.lo + step * static_cast<double>(i);
    const double hi = h.counts.size() > 1 ? lo + step : h.hi;
    svg.bar(svg.plot_left() + bin_w * static_cast<double>(i) + 1.0,
            svg.plot_bottom() - bar_h, std::max(bin_w - 2.0, 0.5), bar_h,
            h.counts[i],
            " data-lo=\"" + label_num(lo) + "\" data-hi=\"" + label_num(hi) + "\"");
  }
  svg.axes("latency (ms)", "iterations");
  svg.x_ticks(label_num(h.lo), label_num(h.hi));
  svg.y_ticks(0, static_cast<double>(peak));
  return svg.finish();
}

std::vector<std::pair<double, double>> trend_points(
    const SvgCanvas& svg, const std::vector<std::pair<size_t, double>>& series,
    size_t n, double lo, double hi) {
  std::vector<std::pair<double, double>> pts;
  const double span_x = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (const auto& [i, v] : series) {
    const double x = svg.plot_left() +
                     (n > 1 ? svg.plot_width() * static_cast<double>(i) / span_x
                            : svg.plot_width() / 2.0);
    const double frac = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    pts.emplace_back(x, svg.plot_bottom() - frac * svg.plot_height());
  }
  return pts;
}

std::string render_metric_trend(const RunResult& r, const ChartSpec& spec) {
  std::vector<std::pair<size_t, double>> cpu, mem;
  for (size_t i = 0; i < r.records.size(); ++i) {
    if (r.records[i].cpu_pct) cpu.emplace_back(i, *r.records[i].cpu_pct);
    mem.emplace_back(i, r.records[i].mem_pct_after);
  }
  if (cpu.empty()) missing(kCpuMetric);

  SvgCanvas svg(spec, "CPU and memory utilization");
  const size_t n = r.records.size();
  svg.polyline(trend_points(svg, cpu, n, 0.0, 100.0), "cpu_pct", kSeriesColors[0]);
  svg.polyline(trend_points(svg, mem, n, 0.0, 100.0), "mem_pct", kSeriesColors[1]);
  svg.axes("iteration", "utilization (%)");
  svg.x_ticks("0", std::to_string(n > 0 ? n - 1 : 0));
  svg.y_ticks(0.0, 100.0);
  svg.text(svg.plot_right() - 4.0, svg.plot_top() + 14.0, "CPU %", "end", 11);
  svg.text(svg.plot_right() - 4.0, svg.plot_top() + 28.0, "memory %", "end", 11);
  return svg.finish();
}

std::string render_confidence_trend(const RunResult& r, const ChartSpec& spec) {
  std::vector<std::pair<size_t, double>> conf;
  for (size_t i = 0; i < r.records.size(); ++i) {
    conf.emplace_back(i, r.records[i].confidence);
  }
  if (conf.empty()) missing(kConfidenceMetric);
  double lo = conf.front().second;
  double hi = lo;
  for (const auto& [i, v] : conf) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  SvgCanvas svg(spec, "Confidence per iteration");
  svg.polyline(trend_points(svg, conf, conf.size(), lo, hi), "confidence",
               kSeriesColors[0]);
  svg.axes("iteration", "confidence");
  svg.x_ticks("0", std::to_string(conf.size() - 1));
  svg.y_ticks(lo, hi);
  return svg.finish();
}

std::string render_prediction_bar(const RunResult& r, const ChartSpec& spec) {
  if (r.records.empty()) missing("predicted_label");
  const StabilityReport st = stability(r.records);
  size_t peak = 0;
  for (const auto& [label, count] : st.label_histogram) peak = std::max(peak, count);

  SvgCanvas svg(spec, "Prediction distribution");
  const double slot = svg.plot_width() / static_cast<double>(st.distinct_labels);
  size_t i = 0;
  for (const auto& [label, count] : st.label_histogram) {
    const double bar_h =
        svg.plot_height() * static_cast<double>(count) / static_cast<double>(peak);
    const double x = svg.plot_left() + slot * static_cast<double>(i);
    svg.bar(x + slot * 0.1, svg.plot_bottom() - bar_h, slot * 0.8, bar_h, count,
            " data-label=\"" + escape_xml(label) + "\"");
    svg.text(x + slot / 2.0, svg.plot_bottom() + 16.0, label, "middle", 10);
    ++i;
  }
  svg.axes("predicted label", "count");
  svg.y_ticks(0, static_cast<double>(peak));
  return svg.finish();
}

}  // namespace

std::string render_chart_svg(const RunResult& r, const ChartSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ChartKind::kLatencyHistogram: return render_histogram(r, spec);
    case ChartKind::kMetricTrend: return render_metric_trend(r, spec);
    case ChartKind::kConfidenceTrend: return render_confidence_trend(r, spec);
    case ChartKind::kPredictionBar: return render_prediction_bar(r, spec);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown chart kind");
}

void render_chart(const RunResult& r, const ChartSpec& spec,
                  const std::filesystem::path& path) {
  write_text_file(path, render_chart_svg(r, spec));
}

}  // namespace picobench

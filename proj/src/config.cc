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

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "picobench/error.h"

namespace picobench {
namespace {

struct Value {
  enum class Type { kString, kNumber, kBool, kArray } type = Type::kString;
  std::string text;  // string contents or the raw number token
  bool flag = false;
  std::vector<Value> items;
  int line = 0;
};

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::kConfigError, msg);
}

class LineParser {
 public:
  LineParser(std::string_view s, int line) : s_(s), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end_or_comment() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  std::string key() {
    skip_ws();
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_' || s_[pos_] == '-' || s_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Value value() {
    skip_ws();
    Value v;
    v.line = line_;
    const char c = peek();
    if (c == '"' || c == '\'') {
      v.type = Value::Type::kString;
      v.text = string_literal(c);
    } else if (c == '[') {
      ++pos_;
      v.type = Value::Type::kArray;
      skip_ws();
      if (peek() == ']') {
        ++pos_;
        return v;
      }
      for (;;) {
        v.items.push_back(value());
        if (v.items.back().type == Value::Type::kArray) fail("nested arrays are not supported");
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          skip_ws();
          if (peek() == ']') {
            ++pos_;
            break;
          }
          continue;
        }
        expect(']');
        break;
      }
    } else if (s_.substr(pos_, 4) == "true") {
      pos_ += 4;
      v.type = Value::Type::kBool;
      v.flag = true;
    } else if (s_.substr(pos_, 5) == "false") {
      pos_ += 5;
      v.type = Value::Type::kBool;
    } else {
      const size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '+' || s_[pos_] == '-' ||
                                  s_[pos_] == '.' || s_[pos_] == '_')) {
        ++pos_;
      }
      if (pos_ == start) fail("expected a value");
      v.type = Value::Type::kNumber;
      for (char ch : s_.substr(start, pos_ - start)) {
        if (ch != '_') v.text += ch;
      }
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    config_error("line " + std::to_string(line_) + ": " + msg);
  }

 private:
  std::string string_literal(char quote) {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != quote) {
      char c = s_[pos_++];
      if (quote == '"' && c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      out += c;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string_view s_;
  size_t pos_ = 0;
  int line_;
};

using Table = std::map<std::string, Value>;

Table parse_document(std::string_view text) {
  Table table;
  std::string section;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;

    LineParser p(line, line_no);
    if (p.at_end_or_comment()) continue;
    if (p.peek() == '[') {
      p.expect('[');
      section = p.key();
      p.expect(']');
      if (!p.at_end_or_comment()) p.fail("trailing characters after table header");
      continue;
    }
    const std::string key = p.key();
    p.expect('=');
    Value v = p.value();
    if (!p.at_end_or_comment()) p.fail("trailing characters after value");
    const std::string full = section.empty() ? key : section + "." + key;
    if (table.contains(full)) p.fail("duplicate key '" + full + "'");
    table.emplace(full, std::move(v));
  }
  return table;
}

class Fields {
 public:
  explicit Fields(Table t) : table_(std::move(t)) {}

  bool has(const std::string& key) const { return table_.contains(key); }

  std::string string(const std::string& key) {
    const Value& v = require(key);
    if (v.type != Value::Type::kString) wrong(key, v, "a string");
    return take(key).text;
  }

  template <typename T>
  T integer(const std::string& key) {
    const Value& v = require(key);
    T out{};
    auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (v.type != Value::Type::kNumber || ec != std::errc() ||
        ptr != v.text.data() + v.text.size()) {
      wrong(key, v, "an integer in range");
    }
    take(key);
    return out;
  }

  double real(const std::string& key) {
    const Value& v = require(key);
    if (v.type != Value::Type::kNumber) wrong(key, v, "a number");
    const double out = to_double(key, v);
    take(key);
    return out;
  }

  std::vector<double> reals(const std::string& key) {
    const Value& v = require(key);
    if (v.type != Value::Type::kArray) wrong(key, v, "an array of numbers");
    std::vector<double> out;
    for (const Value& item : v.items) {
      if (item.type != Value::Type::kNumber) wrong(key, v, "an array of numbers");
      out.push_back(to_double(key, item));
    }
    take(key);
    return out;
  }

  std::vector<std::string> strings(const std::string& key) {
    const Value& v = require(key);
    if (v.type != Value::Type::kArray) wrong(key, v, "an array of strings");
    std::vector<std::string> out;
    for (const Value& item : v.items) {
      if (item.type != Value::Type::kString) wrong(key, v, "an array of strings");
      out.push_back(item.text);
    }
    take(key);
    return out;
  }

  void reject_leftovers() const {
    if (!table_.empty()) {
      const auto& [key, v] = *table_.begin();
      config_error("line " + std::to_string(v.line) + ": unknown field '" + key + "'");
    }
  }

 private:
  const Value& require(const std::string& key) const {
    auto it = table_.find(key);
    if (it == table_.end()) config_error("missing field '" + key + "'");
    return it->second;
  }

  Value take(const std::string& key) {
    auto node = table_.extract(key);
    return std::move(node.mapped());
  }

  double to_double(const std::string& key, const Value& v) const {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (ec != std::errc() || ptr != v.text.data() + v.text.size() || !std::isfinite(out)) {
      wrong(key, v, "a finite number");
    }
    return out;
  }

  [[noreturn]] void wrong(const std::string& key, const Value& v,
                          const char* expected) const {
    config_error("line " + std::to_string(v.line) + ": field '" + key +
                 "' must be " + expected);
  }

  Table table_;
};

std::string resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return (path.is_absolute() || base.empty() ? path : base / path).string();
}

}  // namespace

BenchmarkConfig parse_config(std::string_view text,
                             const std::filesystem::path& base_dir) {
  Fields f(parse_document(text));
  BenchmarkConfig cfg;

  cfg.model_id = f.string("model_id");
  if (f.has("platform_label")) cfg.platform_label = f.string("platform_label");
  cfg.manifest_path = resolve(base_dir, f.string("manifest"));
  if (f.has("iterations")) cfg.iterations = f.integer<int>("iterations");
  if (f.has("warmup")) cfg.warmup = f.integer<int>("warmup");
  if (f.has("seed")) cfg.seed = f.integer<uint64_t>("seed");
  if (cfg.iterations < 1) config_error("field 'iterations' must be >= 1");
  if (cfg.warmup < 0) config_error("field 'warmup' must be >= 0");

  const std::string kind_name = f.string("backend.kind");
  const auto kind = backend_kind_from_string(kind_name);
  if (!kind) {
    config_error("field 'backend.kind' must be synthetic|subprocess|replay, got '" +
                 kind_name + "'");
  }
  BackendSpec& b = cfg.backend;
  b.kind = *kind;
  switch (b.kind) {
    case BackendKind::kSynthetic:
      b.n_classes = f.integer<int>("backend.n_classes");
      b.input_len = f.integer<size_t>("backend.input_len");
      if (f.has("backend.busy_ms")) b.busy_ms = f.real("backend.busy_ms");
      if (f.has("backend.seed")) b.seed = f.integer<uint64_t>("backend.seed");
      break;
    case BackendKind::kSubprocess:
      b.command = f.string("backend.command");
      if (f.has("backend.args")) b.args = f.strings("backend.args");
      if (f.has("backend.timeout_ms")) b.timeout_ms = f.integer<int>("backend.timeout_ms");
      break;
    case BackendKind::kReplay:
      b.path = resolve(base_dir, f.string("backend.path"));
      break;
  }
  b.validate();

  PreprocessParams& pp = cfg.preprocess;
  if (f.has("preprocess.image.resize_h")) {
    pp.image.resize_h = f.integer<size_t>("preprocess.image.resize_h");
  }
  if (f.has("preprocess.image.resize_w")) {
    pp.image.resize_w = f.integer<size_t>("preprocess.image.resize_w");
  }
  if (f.has("preprocess.image.mean")) pp.image.mean = f.reals("preprocess.image.mean");
  if (f.has("preprocess.image.std")) pp.image.stddev = f.reals("preprocess.image.std");
  if (f.has("preprocess.audio.frame_len")) {
    pp.audio.frame_len = f.integer<size_t>("preprocess.audio.frame_len");
  }
  if (f.has("preprocess.audio.hop_len")) {
    pp.audio.hop_len = f.integer<size_t>("preprocess.audio.hop_len");
  }
  if (f.has("preprocess.audio.log_floor")) {
    pp.audio.log_floor = f.real("preprocess.audio.log_floor");
  }
  if (f.has("preprocess.quantization.scale") ||
      f.has("preprocess.quantization.zero_point")) {
    Quantization q;
    q.scale = f.real("preprocess.quantization.scale");
    if (f.has("preprocess.quantization.zero_point")) {
      q.zero_point = f.integer<int>("preprocess.quantization.zero_point");
    }
    if (!(q.scale > 0.0)) config_error("field 'preprocess.quantization.scale' must be > 0");
    pp.quantization = q;
  }
  f.reject_leftovers();
  return cfg;
}

BenchmarkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace picobench

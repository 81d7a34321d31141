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

#include "picobench/media_io.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <string_view>

#include "picobench/error.h"

namespace picobench {
namespace {

static_assert(std::numeric_limits<float>::is_iec559);

class ByteReader {
 public:
  ByteReader(std::span<const uint8_t> bytes, ErrorCode on_short)
      : bytes_(bytes), on_short_(on_short) {}

  size_t remaining() const { return bytes_.size() - pos_; }
  size_t position() const { return pos_; }

  std::span<const uint8_t> take(size_t n) {
    if (remaining() < n) {
      throw Error(on_short_, "truncated at byte " + std::to_string(pos_));
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  void skip(size_t n) { take(n); }

  uint8_t u8() { return take(1)[0]; }
  uint16_t u16() {
    auto b = take(2);
    return static_cast<uint16_t>(b[0] | (b[1] << 8));
  }
  uint32_t u32() {
    auto b = take(4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) |
           (static_cast<uint32_t>(b[3]) << 24);
  }
  std::string_view tag() {
    auto b = take(4);
    return {reinterpret_cast<const char*>(b.data()), 4};
  }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
  ErrorCode on_short_;
};

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_tag(std::vector<uint8_t>& out, std::string_view tag) {
  out.insert(out.end(), tag.begin(), tag.end());
}

constexpr uint16_t kWavePcm = 1;
constexpr uint16_t kWaveExtensible = 0xFFFE;

}  // namespace

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path,
                      std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

AudioClip decode_wav_pcm16(std::span<const uint8_t> bytes) {
  ByteReader r(bytes, ErrorCode::kMalformedHeader);
  if (bytes.size() < 12 || r.tag() != "RIFF") {
    throw Error(ErrorCode::kMalformedHeader, "missing RIFF signature");
  }
  r.u32();  // RIFF size; often wrong in the wild, so not trusted
  if (r.tag() != "WAVE") {
    throw Error(ErrorCode::kMalformedHeader, "missing WAVE form type");
  }

  bool have_fmt = false;
  uint16_t channels = 0;
  uint16_t bits = 0;
  uint32_t rate = 0;
  while (r.remaining() >= 8) {
    const std::string_view id = r.tag();
    const uint32_t size = r.u32();
    if (id == "fmt ") {
      if (size < 16) throw Error(ErrorCode::kMalformedHeader, "short fmt chunk");
      ByteReader fmt(r.take(size), ErrorCode::kMalformedHeader);
      uint16_t format = fmt.u16();
      channels = fmt.u16();
      rate = fmt.u32();
      fmt.u32();  // byte rate
      fmt.u16();  // block align
      bits = fmt.u16();
      if (format == kWaveExtensible && size >= 40) {
        fmt.u16();  // cbSize
        fmt.u16();  // valid bits
        fmt.u32();  // channel mask
        format = fmt.u16();  // first two bytes of the subformat GUID
      }
      if (format != kWavePcm) {
        throw Error(ErrorCode::kUnsupportedFormat,
                    "audio format " + std::to_string(format) + " is not PCM");
      }
      if (channels != 1) {
        throw Error(ErrorCode::kUnsupportedFormat,
                    std::to_string(channels) + " channels; mono required");
      }
      if (bits != 16) {
        throw Error(ErrorCode::kUnsupportedFormat,
                    std::to_string(bits) + "-bit samples; 16-bit required");
      }
      if (rate == 0) {
        throw Error(ErrorCode::kMalformedHeader, "sample rate is 0");
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) {
        throw Error(ErrorCode::kMalformedHeader, "data chunk before fmt chunk");
      }
      if (size % 2 != 0) {
        throw Error(ErrorCode::kMalformedHeader, "odd-sized 16-bit data chunk");
      }
      auto data = r.take(size);
      AudioClip clip;
      clip.sample_rate_hz = static_cast<int>(rate);
      clip.samples.resize(size / 2);
      for (size_t i = 0; i < clip.samples.size(); ++i) {
        const auto raw = static_cast<int16_t>(
            static_cast<uint16_t>(data[2 * i] | (data[2 * i + 1] << 8)));
        clip.samples[i] = static_cast<double>(raw) / 32768.0;
      }
      if (clip.samples.empty()) {
        throw Error(ErrorCode::kMalformedHeader, "data chunk is empty");
      }
      return clip;
    } else {
      r.skip(size);
    }
    if (size % 2 == 1 && r.remaining() > 0) r.skip(1);  // chunk padding
  }
  throw Error(ErrorCode::kMalformedHeader,
              have_fmt ? "no data chunk" : "no fmt chunk");
}

std::vector<uint8_t> encode_wav_pcm16(const AudioClip& clip) {
  const auto data_bytes = static_cast<uint32_t>(clip.samples.size() * 2);
  std::vector<uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kWavePcm);
  put_u16(out, 1);
  put_u32(out, static_cast<uint32_t>(clip.sample_rate_hz));
  put_u32(out, static_cast<uint32_t>(clip.sample_rate_hz) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : clip.samples) {
    const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(scaled)));
  }
  return out;
}

RawTensor decode_tensor(std::span<const uint8_t> bytes) {
  ByteReader r(bytes, ErrorCode::kMalformedHeader);
  if (bytes.size() < 8 || r.tag() != "PTEN") {
    throw Error(ErrorCode::kMalformedHeader, "missing PTEN magic");
  }
  const uint16_t version = r.u16();
  if (version != 1) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "tensor container version " + std::to_string(version));
  }
  const uint8_t dtype = r.u8();
  if (dtype > 2) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "tensor dtype " + std::to_string(dtype));
  }
  RawTensor t;
  t.dtype = static_cast<TensorDType>(dtype);
  const uint8_t ndim = r.u8();
  size_t count = 1;
  for (uint8_t i = 0; i < ndim; ++i) {
    t.dims.push_back(r.u32());
    count *= t.dims.back();
  }
  const size_t width = t.dtype == TensorDType::kF32   ? 4
                       : t.dtype == TensorDType::kI16 ? 2
                                                      : 1;
  if (r.remaining() != count * width) {
    throw Error(ErrorCode::kMalformedHeader,
                "payload is " + std::to_string(r.remaining()) +
                    " bytes, expected " + std::to_string(count * width));
  }
  t.data.resize(count);
  for (size_t i = 0; i < count; ++i) {
    switch (t.dtype) {
      case TensorDType::kF32:
        t.data[i] = std::bit_cast<float>(r.u32());
        break;
      case TensorDType::kU8:
        t.data[i] = r.u8();
        break;
      case TensorDType::kI16:
        t.data[i] = static_cast<int16_t>(r.u16());
        break;
    }
  }
  return t;
}

std::vector<uint8_t> encode_tensor(const RawTensor& t) {
  std::vector<uint8_t> out;
  put_tag(out, "PTEN");
  put_u16(out, 1);
  out.push_back(static_cast<uint8_t>(t.dtype));
  out.push_back(static_cast<uint8_t>(t.dims.size()));
  for (uint32_t d : t.dims) put_u32(out, d);
  for (double v : t.data) {
    switch (t.dtype) {
      case TensorDType::kF32:
        put_u32(out, std::bit_cast<uint32_t>(static_cast<float>(v)));
        break;
      case TensorDType::kU8:
        out.push_back(static_cast<uint8_t>(v));
        break;
      case TensorDType::kI16:
        put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
        break;
    }
  }
  return out;
}

ImageTensor as_image(const RawTensor& t) {
  if (t.dims.size() != 2 && t.dims.size() != 3) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "image tensor must be rank 2 or 3, got rank " +
                    std::to_string(t.dims.size()));
  }
  ImageTensor img;
  img.height = t.dims[0];
  img.width = t.dims[1];
  img.channels = t.dims.size() == 3 ? t.dims[2] : 1;
  if (img.height == 0 || img.width == 0 || img.channels == 0) {
    throw Error(ErrorCode::kUnsupportedFormat, "image has a zero dimension");
  }
  for (double v : t.data) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kUnsupportedFormat, "non-finite pixel value");
    }
  }
  img.data = t.data;
  return img;
}

}  // namespace picobench

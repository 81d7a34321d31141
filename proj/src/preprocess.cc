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

#include "picobench/preprocess.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "picobench/error.h"

namespace picobench {

size_t InputTensor::element_count() const {
  size_t n = 1;
  for (size_t d : shape) n *= d;
  return n;
}

namespace {

struct Tap {
  size_t lo;
  size_t hi;
  double frac;
};

Tap source_tap(size_t dst, size_t in, size_t out) {
  double src = (static_cast<double>(dst) + 0.5) * static_cast<double>(in) /
                   static_cast<double>(out) -
               0.5;
  src = std::clamp(src, 0.0, static_cast<double>(in - 1));
  const auto lo = static_cast<size_t>(std::floor(src));
  const size_t hi = std::min(lo + 1, in - 1);
  return {lo, hi, src - static_cast<double>(lo)};
}

}  // namespace

ImageTensor resize_bilinear(const ImageTensor& img, size_t out_h,
                            size_t out_w) {
  if (out_h == 0 || out_w == 0) {
    throw Error(ErrorCode::kInvalidArgument, "output dimensions must be >= 1");
  }
  if (img.height == 0 || img.width == 0 || img.channels == 0 ||
      img.data.size() != img.height * img.width * img.channels) {
    throw Error(ErrorCode::kInvalidArgument, "malformed image tensor");
  }
  if (out_h == img.height && out_w == img.width) return img;

  ImageTensor out{out_h, out_w, img.channels, {}};
  out.data.resize(out_h * out_w * img.channels);
  for (size_t y = 0; y < out_h; ++y) {
    const Tap ty = source_tap(y, img.height, out_h);
    for (size_t x = 0; x < out_w; ++x) {
      const Tap tx = source_tap(x, img.width, out_w);
      for (size_t c = 0; c < img.channels; ++c) {
        const double top = img.at(ty.lo, tx.lo, c) +
                           tx.frac * (img.at(ty.lo, tx.hi, c) -
                                      img.at(ty.lo, tx.lo, c));
        const double bottom = img.at(ty.hi, tx.lo, c) +
                              tx.frac * (img.at(ty.hi, tx.hi, c) -
                                         img.at(ty.hi, tx.lo, c));
        out.data[(y * out_w + x) * img.channels + c] =
            top + ty.frac * (bottom - top);
      }
    }
  }
  return out;
}

ImageTensor normalize(const ImageTensor& img, std::span<const double> mean,
                      std::span<const double> stddev) {
  auto per_channel_ok = [&](size_t n) { return n == 1 || n == img.channels; };
  if (!per_channel_ok(mean.size()) || !per_channel_ok(stddev.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "mean/std must have 1 or " + std::to_string(img.channels) +
                    " entries");
  }
  for (double s : stddev) {
    if (s == 0.0) throw Error(ErrorCode::kZeroStd, "std contains 0");
  }
  ImageTensor out = img;
  for (size_t i = 0; i < out.data.size(); ++i) {
    const size_t c = i % img.channels;
    const double m = mean.size() == 1 ? mean[0] : mean[c];
    const double s = stddev.size() == 1 ? stddev[0] : stddev[c];
    out.data[i] = (out.data[i] - m) / s;
  }
  return out;
}

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::complex<double>> fft(
    std::span<const std::complex<double>> x) {
  const size_t n = x.size();
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::kNotPowerOfTwo,
                "length " + std::to_string(n) + " is not a power of two");
  }
  std::vector<std::complex<double>> a(x.begin(), x.end());

  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // Twiddles evaluated directly rather than by recurrence.
  std::vector<std::complex<double>> twiddle(n / 2);
  for (size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const size_t half = len / 2;
    const size_t stride = n / len;
    for (size_t start = 0; start < n; start += len) {
      for (size_t k = 0; k < half; ++k) {
        const auto u = a[start + k];
        const auto v = a[start + k + half] * twiddle[k * stride];
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
  return a;
}

std::vector<std::complex<double>> ifft(
    std::span<const std::complex<double>> x) {
  std::vector<std::complex<double>> conj(x.size());
  std::transform(x.begin(), x.end(), conj.begin(),
                 [](auto z) { return std::conj(z); });
  auto out = fft(conj);
  const double n = static_cast<double>(x.size());
  for (auto& z : out) z = std::conj(z) / n;
  return out;
}

std::vector<double> hann_window(size_t n) {
  if (n == 1) return {1.0};
  std::vector<double> w(n);
  for (size_t t = 0; t < n; ++t) {
    w[t] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                 static_cast<double>(t) /
                                 static_cast<double>(n - 1)));
  }
  return w;
}

Spectrogram stft_log_power(const AudioClip& clip, size_t frame_len,
                           size_t hop_len, double log_floor) {
  if (!is_power_of_two(frame_len)) {
    throw Error(ErrorCode::kNotPowerOfTwo,
                "frame_len " + std::to_string(frame_len) +
                    " is not a power of two");
  }
  if (hop_len == 0) {
    throw Error(ErrorCode::kInvalidArgument, "hop_len must be >= 1");
  }
  if (!(log_floor > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "log floor must be positive");
  }
  if (clip.samples.size() < frame_len) {
    throw Error(ErrorCode::kClipTooShort,
                std::to_string(clip.samples.size()) + " samples < frame_len " +
                    std::to_string(frame_len));
  }

  Spectrogram spec;
  spec.frame_len = frame_len;
  spec.hop_len = hop_len;
  spec.n_bins = frame_len / 2 + 1;
  spec.n_frames = 1 + (clip.samples.size() - frame_len) / hop_len;
  spec.values.resize(spec.n_frames * spec.n_bins);

  const auto window = hann_window(frame_len);
  std::vector<std::complex<double>> frame(frame_len);
  for (size_t f = 0; f < spec.n_frames; ++f) {
    const size_t offset = f * hop_len;
    for (size_t t = 0; t < frame_len; ++t) {
      frame[t] = clip.samples[offset + t] * window[t];
    }
    const auto spectrum = fft(frame);
    for (size_t b = 0; b < spec.n_bins; ++b) {
      spec.values[f * spec.n_bins + b] =
          std::log10(std::max(std::norm(spectrum[b]), log_floor));
    }
  }
  return spec;
}

InputTensor quantize(const InputTensor& t) {
  if (!t.quantization) {
    throw Error(ErrorCode::kInvalidArgument, "tensor has no quantization");
  }
  const auto [scale, zero_point] = *t.quantization;
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kNonPositiveScale,
                "scale must be > 0, got " + std::to_string(scale));
  }
  InputTensor out;
  out.shape = t.shape;
  out.dtype = DType::kU8;
  out.quantization = t.quantization;
  out.data.resize(t.data.size());
  for (size_t i = 0; i < t.data.size(); ++i) {
    const double q = std::round(t.data[i] / scale) + zero_point;
    out.data[i] = std::clamp(q, 0.0, 255.0);
  }
  return out;
}

InputTensor to_input_tensor(const ImageTensor& img) {
  return {{img.height, img.width, img.channels}, img.data, DType::kF32, {}};
}

InputTensor to_input_tensor(const Spectrogram& spec) {
  return {{spec.n_frames, spec.n_bins}, spec.values, DType::kF32, {}};
}

}  // namespace picobench

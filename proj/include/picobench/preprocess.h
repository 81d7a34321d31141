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

// Input preparation: image resize/normalize, radix-2 FFT, log-power STFT
// and affine uint8 quantization. Every function here is pure and produces
// bit-identical output for identical input on a given platform.

#ifndef PICOBENCH_PREPROCESS_H_
#define PICOBENCH_PREPROCESS_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace picobench {

// Row-major height x width x channels.
struct ImageTensor {
  size_t height = 0;
  size_t width = 0;
  size_t channels = 0;
  std::vector<double> data;

  double at(size_t y, size_t x, size_t c) const {
    return data[(y * width + x) * channels + c];
  }
  bool operator==(const ImageTensor&) const = default;
};

struct AudioClip {
  int sample_rate_hz = 0;
  std::vector<double> samples;
};

struct Spectrogram {
  size_t n_frames = 0;
  size_t n_bins = 0;
  size_t frame_len = 0;
  size_t hop_len = 0;
  std::vector<double> values;  // n_frames x n_bins, row-major

  double at(size_t frame, size_t bin) const {
    return values[frame * n_bins + bin];
  }
};

struct Quantization {
  double scale = 1.0;
  int zero_point = 0;
  bool operator==(const Quantization&) const = default;
};

enum class DType { kF32, kU8 };

// Uniform payload handed to backends. For kU8 tensors `data` holds the
// integer codes 0..255.
struct InputTensor {
  std::vector<size_t> shape;
  std::vector<double> data;
  DType dtype = DType::kF32;
  std::optional<Quantization> quantization;

  size_t element_count() const;
};

inline constexpr double kDefaultLogFloor = 1e-10;
inline constexpr size_t kDefaultFrameLen = 512;
inline constexpr size_t kDefaultHopLen = 256;

// Bilinear resize with half-pixel centers:
//   src = (dst + 0.5) * in / out - 0.5, clamped to [0, in - 1].
ImageTensor resize_bilinear(const ImageTensor& img, size_t out_h, size_t out_w);

// (v - mean[c]) / std[c]. A single-element mean/std applies to all channels.
ImageTensor normalize(const ImageTensor& img, std::span<const double> mean,
                      std::span<const double> stddev);

bool is_power_of_two(size_t n);

// Forward DFT, X[j] = sum_t x[t] exp(-2 pi i j t / n), n a power of two.
std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x);
// Inverse DFT via conj(fft(conj(X))) / n.
std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> x);

// Symmetric Hann window 0.5 * (1 - cos(2 pi t / (n - 1))); n == 1 yields {1}.
std::vector<double> hann_window(size_t n);

Spectrogram stft_log_power(const AudioClip& clip,
                           size_t frame_len = kDefaultFrameLen,
                           size_t hop_len = kDefaultHopLen,
                           double log_floor = kDefaultLogFloor);

// q = clamp(round(v / scale) + zero_point, 0, 255), round half away from zero.
// Uses t.quantization; throws InvalidArgument when it is absent.
InputTensor quantize(const InputTensor& t);

InputTensor to_input_tensor(const ImageTensor& img);
InputTensor to_input_tensor(const Spectrogram& spec);

}  // namespace picobench

#endif  // PICOBENCH_PREPROCESS_H_

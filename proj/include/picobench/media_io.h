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

// Readers and writers for the on-disk sample formats: 16-bit mono PCM WAV
// and the "PTEN" raw tensor container.
//
// PTEN layout (all little-endian):
//   "PTEN" | u16 version=1 | u8 dtype (0=f32, 1=u8, 2=i16) | u8 ndim
//   | u32 dims[ndim] | packed element data

#ifndef PICOBENCH_MEDIA_IO_H_
#define PICOBENCH_MEDIA_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "picobench/preprocess.h"

namespace picobench {

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path,
                      std::span<const uint8_t> bytes);

AudioClip decode_wav_pcm16(std::span<const uint8_t> bytes);
std::vector<uint8_t> encode_wav_pcm16(const AudioClip& clip);

enum class TensorDType : uint8_t { kF32 = 0, kU8 = 1, kI16 = 2 };

struct RawTensor {
  TensorDType dtype = TensorDType::kF32;
  std::vector<uint32_t> dims;
  std::vector<double> data;

  bool operator==(const RawTensor&) const = default;
};

RawTensor decode_tensor(std::span<const uint8_t> bytes);
std::vector<uint8_t> encode_tensor(const RawTensor& tensor);

// Interprets a rank-2 (H, W) or rank-3 (H, W, C) tensor as an image.
ImageTensor as_image(const RawTensor& tensor);

}  // namespace picobench

#endif  // PICOBENCH_MEDIA_IO_H_

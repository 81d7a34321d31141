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

#ifndef PICOBENCH_ERROR_H_
#define PICOBENCH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace picobench {

enum class ErrorCode {
  // sysmon
  kCounterSourceUnavailable,
  kNoDelta,
  // preprocess
  kInvalidArgument,
  kZeroStd,
  kNotPowerOfTwo,
  kClipTooShort,
  kUnsupportedFormat,
  kMalformedHeader,
  kNonPositiveScale,
  // backends
  kSpawnFailure,
  kHandshakeTimeout,
  kReplayFileMissing,
  kShapeMismatch,
  kBackendTimeout,
  kProtocolError,
  kBackendCrashed,
  // runner
  kConfigError,
  kManifestParseError,
  kMissingSampleFile,
  kPreprocessError,
  // stats
  kEmptySeries,
  kNonFiniteValue,
  kMissingMetric,
  // report
  kIoError,
  kSchemaVersionMismatch,
  kParseError,
};

std::string_view to_string(ErrorCode code);

// True for errors raised while a backend is loading or serving requests.
bool is_backend_error(ErrorCode code);

// Every failure in the library is reported through this type. The message
// is prefixed with the symbolic code name, e.g. "NoDelta: zero tick window".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace picobench

#endif  // PICOBENCH_ERROR_H_

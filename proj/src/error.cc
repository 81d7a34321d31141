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

#include "picobench/error.h"

namespace picobench {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCounterSourceUnavailable: return "CounterSourceUnavailable";
    case ErrorCode::kNoDelta: return "NoDelta";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kZeroStd: return "ZeroStd";
    case ErrorCode::kNotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::kClipTooShort: return "ClipTooShort";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kNonPositiveScale: return "NonPositiveScale";
    case ErrorCode::kSpawnFailure: return "SpawnFailure";
    case ErrorCode::kHandshakeTimeout: return "HandshakeTimeout";
    case ErrorCode::kReplayFileMissing: return "ReplayFileMissing";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kBackendTimeout: return "BackendTimeout";
    case ErrorCode::kProtocolError: return "ProtocolError";
    case ErrorCode::kBackendCrashed: return "BackendCrashed";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kManifestParseError: return "ManifestParseError";
    case ErrorCode::kMissingSampleFile: return "MissingSampleFile";
    case ErrorCode::kPreprocessError: return "PreprocessError";
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kMissingMetric: return "MissingMetric";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_backend_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSpawnFailure:
    case ErrorCode::kHandshakeTimeout:
    case ErrorCode::kReplayFileMissing:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kBackendTimeout:
    case ErrorCode::kProtocolError:
    case ErrorCode::kBackendCrashed:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace picobench

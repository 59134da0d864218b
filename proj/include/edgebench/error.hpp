// Copyright 2026 The edgebench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgebench {

// Every domain failure maps to one of these names. The CLI prints the name
// on stderr so scripts can match on it.
enum class ErrorCode {
  kMalformedLog,
  kEmptyLog,
  kNonMonotonicTimestamps,
  kSegmentationFailure,
  kWindowTooShort,
  kTooFewRepetitions,
  kTooFewBatches,
  kTooFewElements,
  kEmptyInput,
  kDegenerateInput,
  kNoCommonSizes,
  kNonPositiveIT,
  kDimensionMismatch,
  kLengthMismatch,
  kZeroRow,
  kRunnerLaunchFailure,
  kProtocolViolation,
  kRunnerReportedError,
  kFixtureNotFound,
  kNoMatchingRows,
  kCountMismatch,
  kEmptyBundle,
  kMalformedInput,
  kIoError,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

// Raised by segmentation; carries the number of inference plateaus found.
class SegmentationError : public Error {
 public:
  SegmentationError(std::size_t detected, const std::string& message)
      : Error(ErrorCode::kSegmentationFailure, message), detected_(detected) {}

  std::size_t detected() const noexcept { return detected_; }

 private:
  std::size_t detected_;
};

}  // namespace edgebench

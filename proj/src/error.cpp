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

#include "edgebench/error.hpp"

namespace edgebench {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLog: return "MalformedLog";
    case ErrorCode::kEmptyLog: return "EmptyLog";
    case ErrorCode::kNonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case ErrorCode::kSegmentationFailure: return "SegmentationFailure";
    case ErrorCode::kWindowTooShort: return "WindowTooShort";
    case ErrorCode::kTooFewRepetitions: return "TooFewRepetitions";
    case ErrorCode::kTooFewBatches: return "TooFewBatches";
    case ErrorCode::kTooFewElements: return "TooFewElements";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kNoCommonSizes: return "NoCommonSizes";
    case ErrorCode::kNonPositiveIT: return "NonPositiveIT";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroRow: return "ZeroRow";
    case ErrorCode::kRunnerLaunchFailure: return "RunnerLaunchFailure";
    case ErrorCode::kProtocolViolation: return "ProtocolViolation";
    case ErrorCode::kRunnerReportedError: return "RunnerReportedError";
    case ErrorCode::kFixtureNotFound: return "FixtureNotFound";
    case ErrorCode::kNoMatchingRows: return "NoMatchingRows";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kEmptyBundle: return "EmptyBundle";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace edgebench

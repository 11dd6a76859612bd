// Copyright 2026 The radpd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/error.hpp"

namespace radpd {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::insufficient_data: return "InsufficientData";
    case ErrorCode::dimension_too_large: return "DimensionTooLarge";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_symmetric: return "NotSymmetric";
    case ErrorCode::not_positive: return "NotPositive";
    case ErrorCode::limits_violated: return "LimitsViolated";
    case ErrorCode::joint_diagonalization_failed: return "JointDiagonalizationFailed";
    case ErrorCode::spectrum_out_of_range: return "SpectrumOutOfRange";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::not_median: return "NotMedian";
    case ErrorCode::io: return "IoError";
  }
  return "Unknown";
}

}  // namespace radpd

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

#ifndef RADPD_CORE_ERROR_HPP
#define RADPD_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace radpd {

enum class ErrorCode {
  invalid_argument,
  parse,
  insufficient_data,
  dimension_too_large,
  dimension_mismatch,
  not_symmetric,
  not_positive,
  limits_violated,
  joint_diagonalization_failed,
  spectrum_out_of_range,
  too_large,
  not_median,
  io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace radpd

#endif  // RADPD_CORE_ERROR_HPP

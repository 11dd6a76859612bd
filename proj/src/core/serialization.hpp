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

#ifndef RADPD_CORE_SERIALIZATION_HPP
#define RADPD_CORE_SERIALIZATION_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "core/analysis.hpp"
#include "core/kernel.hpp"
#include "core/moments.hpp"

namespace radpd {

inline constexpr int kKernelSchema = 1;

/// {"schema":1, "form":..., ...}. Throws ErrorCode::parse.
RadialKernel kernel_from_json(const nlohmann::json& doc);
RadialKernel kernel_from_string(const std::string& text);
nlohmann::json kernel_to_json(const RadialKernel& phi);

/// "tree:2", "tree:inf" or "product:2,3". Throws ErrorCode::parse.
std::vector<ExtendedDegree> parse_space(const std::string& text);
std::string space_to_string(const std::vector<ExtendedDegree>& qs);

nlohmann::json degree_to_json(ExtendedDegree q);
ExtendedDegree degree_from_json(const nlohmann::json& value);

nlohmann::json report_to_json(const MembershipReport& report);

nlohmann::json measure_to_json(const DiscreteMeasure& measure);
DiscreteMeasure measure_from_json(const nlohmann::json& doc);

}  // namespace radpd

#endif  // RADPD_CORE_SERIALIZATION_HPP

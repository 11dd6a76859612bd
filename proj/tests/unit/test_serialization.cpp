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

#include <doctest.h>

#include <optional>

#include "core/error.hpp"
#include "core/serialization.hpp"

using nlohmann::json;
using radpd::ExtendedDegree;
using radpd::RadialKernel;

namespace {

std::optional<radpd::ErrorCode> code_of(const std::string& text) {
  try {
    radpd::kernel_from_string(text);
  } catch (const radpd::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("kernel documents") {
  const auto g = radpd::kernel_from_string(R"({"schema":1,"form":"geometric","s":0.25})");
  CHECK(g(2) == 0.0625);
  const auto t = radpd::kernel_from_string(R"({"form":"tree_eigen","q":"inf","s":0.5})");
  CHECK(t(3) == 0.125);
  const auto p = radpd::kernel_from_string(R"({"form":"tree_eigen","q":2,"s":0})");
  CHECK(p(2) == doctest::Approx(-0.5));
  const auto tab = radpd::kernel_from_string(R"({"form":"table","values":[1,0.5,0.25],"l0":0,"l1":0})");
  CHECK(tab.max_index() == 2);
  const auto mix = radpd::kernel_from_string(
      R"({"form":"mixture","components":[{"form":"geometric","s":0.5,"weight":2},)"
      R"({"form":"tree_eigen","q":3,"s":-0.2,"weight":1}]})");
  CHECK(mix(0) == doctest::Approx(3.0));
}

TEST_CASE("kernel round trip") {
  const std::vector<RadialKernel> kernels = {
      RadialKernel::geometric(-0.3),
      RadialKernel::tree_eigen(ExtendedDegree::finite(4), 0.7),
      RadialKernel::tree_eigen(ExtendedDegree::infinite(), 0.1),
      RadialKernel::table({1.0, 0.3, 0.1}, 0.05, 0.01),
      RadialKernel::mixture({{radpd::GeometricForm{0.4}, 1.5},
                             {radpd::TreeEigenForm{ExtendedDegree::finite(2), -0.5}, 0.5}}),
  };
  for (const auto& k : kernels) {
    const json doc = radpd::kernel_to_json(k);
    CHECK(doc.at("schema") == radpd::kKernelSchema);
    const auto back = radpd::kernel_from_json(doc);
    for (int n = 0; n <= 2; ++n) CHECK(back(n) == k(n));
    CHECK(radpd::kernel_to_json(back) == doc);
  }
}

TEST_CASE("kernel errors") {
  CHECK(code_of("{not json") == radpd::ErrorCode::parse);
  CHECK(code_of("[1,2]") == radpd::ErrorCode::parse);
  CHECK(code_of(R"({"form":"bessel"})") == radpd::ErrorCode::parse);
  CHECK(code_of(R"({"form":"geometric"})") == radpd::ErrorCode::parse);
  CHECK(code_of(R"({"form":"geometric","s":"x"})") == radpd::ErrorCode::parse);
  CHECK(code_of(R"({"schema":2,"form":"geometric","s":0.1})") == radpd::ErrorCode::parse);
  CHECK(code_of(R"({"form":"geometric","s":1.5})") == radpd::ErrorCode::parse);
  CHECK(code_of(R"({"form":"tree_eigen","q":0,"s":0.1})") == radpd::ErrorCode::parse);
  CHECK(code_of(R"({"form":"table","values":[],"l0":0,"l1":0})") == radpd::ErrorCode::parse);
}

TEST_CASE("spaces") {
  const auto tree = radpd::parse_space("tree:3");
  REQUIRE(tree.size() == 1);
  CHECK(tree[0] == ExtendedDegree::finite(3));
  CHECK(radpd::parse_space("tree:inf")[0].is_infinite());
  const auto prod = radpd::parse_space("product:2,inf,5");
  REQUIRE(prod.size() == 3);
  CHECK(prod[1].is_infinite());
  CHECK(radpd::space_to_string(prod) == "product:2,inf,5");
  CHECK(radpd::space_to_string(tree) == "tree:3");
  CHECK_THROWS_AS(radpd::parse_space("graph:3"), radpd::Error);
  CHECK_THROWS_AS(radpd::parse_space("tree:1"), radpd::Error);
  CHECK_THROWS_AS(radpd::parse_space("tree:2x"), radpd::Error);
  CHECK_THROWS_AS(radpd::parse_space("product:"), radpd::Error);
}

TEST_CASE("degrees") {
  CHECK(radpd::degree_to_json(ExtendedDegree::finite(7)) == json(7));
  CHECK(radpd::degree_to_json(ExtendedDegree::infinite()) == json("inf"));
  CHECK(radpd::degree_from_json(json("inf")).is_infinite());
  CHECK(radpd::degree_from_json(json(2)) == ExtendedDegree::finite(2));
  CHECK_THROWS_AS(radpd::degree_from_json(json(2.5)), radpd::Error);
}

TEST_CASE("report documents") {
  const auto d = ExtendedDegree::finite(3);
  const auto p = RadialKernel::tree_eigen(ExtendedDegree::finite(2), 0.0);
  const auto r = radpd::check_positive_definite(p, std::span(&d, 1), 16);
  const json doc = radpd::report_to_json(r);
  CHECK(doc.at("verdict") == "non_member");
  CHECK(doc.at("space") == "tree:3");
  CHECK(doc.at("truncation") == 16);
  CHECK(doc.at("witness").at("dominant_index") == 1);
  CHECK(doc.at("witness").at("quadratic_form").get<double>() < 0.0);
  for (const char* key : {"min_eigenvalue", "trace", "trace_norm", "spectral_norm", "l0", "l1",
                          "limits_satisfied", "tail_heuristic"}) {
    CHECK(doc.contains(key));
  }
  const auto q2 = ExtendedDegree::finite(2);
  const json member = radpd::report_to_json(radpd::check_positive_definite(p, std::span(&q2, 1), 16));
  CHECK(member.at("verdict") == "member");
  CHECK(member.at("witness").is_null());
}

TEST_CASE("measure documents") {
  radpd::DiscreteMeasure mu;
  mu.dims = 2;
  mu.atoms = {{{0.1, -0.2}, 0.5}, {{0.3, 0.3}, 1.25}};
  mu.c_plus = 0.1;
  const json doc = radpd::measure_to_json(mu);
  CHECK(doc.at("dims") == 2);
  CHECK(doc.at("atoms").size() == 2);
  const auto back = radpd::measure_from_json(doc);
  CHECK(back.dims == 2);
  CHECK(back.atoms[1].location == std::vector<double>{0.3, 0.3});
  CHECK(back.atoms[1].weight == 1.25);
  CHECK(back.c_plus == 0.1);
  CHECK(back.c_minus == 0.0);

  json bad = doc;
  bad["atoms"][0]["location"] = {0.1};
  CHECK_THROWS_AS(radpd::measure_from_json(bad), radpd::Error);
  bad = doc;
  bad["atoms"][0]["weight"] = -1;
  CHECK_THROWS_AS(radpd::measure_from_json(bad), radpd::Error);
}

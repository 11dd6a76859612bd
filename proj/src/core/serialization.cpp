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

#include "core/serialization.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace radpd {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::parse, message); }

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) fail(std::string("missing field '") + name + "'");
  return doc.at(name);
}

double number(const json& doc, const char* name) {
  const json& value = field(doc, name);
  if (!value.is_number()) fail(std::string("field '") + name + "' must be a number");
  return value.get<double>();
}

std::variant<GeometricForm, TreeEigenForm> closed_component(const json& doc) {
  const json& form = field(doc, "form");
  if (form == "geometric") return GeometricForm{number(doc, "s")};
  if (form == "tree_eigen") return TreeEigenForm{degree_from_json(field(doc, "q")), number(doc, "s")};
  fail("mixture components must be geometric or tree_eigen");
}

json closed_to_json(const std::variant<GeometricForm, TreeEigenForm>& form) {
  if (const auto* g = std::get_if<GeometricForm>(&form)) {
    return json{{"form", "geometric"}, {"s", g->s}};
  }
  const auto& t = std::get<TreeEigenForm>(form);
  return json{{"form", "tree_eigen"}, {"q", degree_to_json(t.q)}, {"s", t.s}};
}

ExtendedDegree degree_from_text(const std::string& text) {
  if (text == "inf" || text == "infinity") return ExtendedDegree::infinite();
  std::size_t used = 0;
  long q = 0;
  try {
    q = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) fail("bad degree '" + text + "'");
  try {
    return ExtendedDegree::finite(q);
  } catch (const Error& e) {
    fail(e.what());
  }
}

}  // namespace

json degree_to_json(ExtendedDegree q) {
  if (q.is_infinite()) return "inf";
  return q.q();
}

ExtendedDegree degree_from_json(const json& value) {
  if (value.is_string()) return degree_from_text(value.get<std::string>());
  if (value.is_number_integer()) return degree_from_text(std::to_string(value.get<long>()));
  if (value.is_number()) {
    const double q = value.get<double>();
    if (std::isinf(q)) return ExtendedDegree::infinite();
    if (q != std::floor(q)) fail("degree q must be an integer or \"inf\"");
    return degree_from_text(std::to_string(static_cast<long>(q)));
  }
  fail("degree q must be an integer or \"inf\"");
}

RadialKernel kernel_from_json(const json& doc) {
  if (!doc.is_object()) fail("kernel spec must be a JSON object");
  if (doc.contains("schema") && doc.at("schema") != kKernelSchema) {
    fail("unsupported kernel schema " + doc.at("schema").dump());
  }
  const json& form = field(doc, "form");
  if (!form.is_string()) fail("field 'form' must be a string");
  const auto name = form.get<std::string>();
  try {
    if (name == "table") {
      const json& values = field(doc, "values");
      if (!values.is_array()) fail("field 'values' must be an array");
      std::vector<double> data;
      for (const auto& v : values) {
        if (!v.is_number()) fail("table values must be numbers");
        data.push_back(v.get<double>());
      }
      return RadialKernel::table(std::move(data), number(doc, "l0"), number(doc, "l1"));
    }
    if (name == "geometric") return RadialKernel::geometric(number(doc, "s"));
    if (name == "tree_eigen") {
      return RadialKernel::tree_eigen(degree_from_json(field(doc, "q")), number(doc, "s"));
    }
    if (name == "mixture") {
      const json& components = field(doc, "components");
      if (!components.is_array()) fail("field 'components' must be an array");
      std::vector<MixtureComponent> parts;
      for (const auto& c : components) parts.push_back({closed_component(c), number(c, "weight")});
      return RadialKernel::mixture(std::move(parts));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse) throw;
    throw Error(ErrorCode::parse, e.what());
  }
  fail("unknown kernel form '" + name + "'");
}

RadialKernel kernel_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid kernel JSON: ") + e.what());
  }
  return kernel_from_json(doc);
}

json kernel_to_json(const RadialKernel& phi) {
  json doc{{"schema", kKernelSchema}};
  std::visit(
      [&](const auto& form) {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, TableForm>) {
          doc["form"] = "table";
          doc["values"] = form.values;
          doc["l0"] = form.l0;
          doc["l1"] = form.l1;
        } else if constexpr (std::is_same_v<T, MixtureForm>) {
          doc["form"] = "mixture";
          doc["components"] = json::array();
          for (const auto& c : form.components) {
            json item = closed_to_json(c.form);
            item["weight"] = c.weight;
            doc["components"].push_back(std::move(item));
          }
        } else {
          doc.update(closed_to_json(form));
        }
      },
      phi.form());
  return doc;
}

std::vector<ExtendedDegree> parse_space(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) fail("space must be tree:<q> or product:<q1,q2,...>");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  std::vector<ExtendedDegree> qs;
  if (kind == "tree") {
    qs.push_back(degree_from_text(rest));
  } else if (kind == "product") {
    std::istringstream stream(rest);
    std::string item;
    while (std::getline(stream, item, ',')) qs.push_back(degree_from_text(item));
    if (qs.empty() || rest.empty() || rest.back() == ',') fail("product space needs degrees");
  } else {
    fail("unknown space kind '" + kind + "'");
  }
  return qs;
}

std::string space_to_string(const std::vector<ExtendedDegree>& qs) {
  std::string text = qs.size() == 1 ? "tree:" : "product:";
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i > 0) text += ",";
    text += qs[i].to_string();
  }
  return text;
}

json report_to_json(const MembershipReport& report) {
  json doc{
      {"verdict", to_string(report.verdict)},
      {"space", space_to_string(report.space)},
      {"truncation", report.truncation},
      {"min_eigenvalue", report.min_eigenvalue},
      {"trace", report.trace},
      {"trace_norm", report.trace_norm},
      {"spectral_norm", report.spectral_norm},
      {"l0", report.limits.l0},
      {"l1", report.limits.l1},
      {"limits_satisfied", report.limits_satisfied},
      {"tail_heuristic", report.tail_heuristic},
  };
  if (report.witness) {
    const Witness& w = *report.witness;
    json components = json::array();
    std::size_t dominant = 0;
    for (std::size_t k = 0; k < w.components.size(); ++k) {
      components.push_back({{"index", w.indices[k]}, {"value", w.components[k]}});
      if (std::abs(w.components[k]) > std::abs(w.components[dominant])) dominant = k;
    }
    json witness{{"quadratic_form", w.quadratic_form}, {"components", std::move(components)}};
    if (!w.components.empty()) {
      const auto& index = w.indices[dominant];
      witness["dominant_index"] = index.size() == 1 ? json(index[0]) : json(index);
    }
    doc["witness"] = std::move(witness);
  } else {
    doc["witness"] = nullptr;
  }
  return doc;
}

json measure_to_json(const DiscreteMeasure& measure) {
  json atoms = json::array();
  for (const auto& a : measure.atoms) atoms.push_back({{"location", a.location}, {"weight", a.weight}});
  return json{{"dims", measure.dims},
              {"atoms", std::move(atoms)},
              {"c_plus", measure.c_plus},
              {"c_minus", measure.c_minus}};
}

DiscreteMeasure measure_from_json(const json& doc) {
  DiscreteMeasure measure;
  const json& dims = field(doc, "dims");
  if (!dims.is_number_integer()) fail("field 'dims' must be an integer");
  measure.dims = dims.get<int>();
  measure.c_plus = doc.contains("c_plus") ? number(doc, "c_plus") : 0.0;
  measure.c_minus = doc.contains("c_minus") ? number(doc, "c_minus") : 0.0;
  if (doc.contains("atoms")) {
    const json& atoms = doc.at("atoms");
    if (!atoms.is_array()) fail("field 'atoms' must be an array");
    for (const auto& a : atoms) {
      Atom atom;
      const json& location = field(a, "location");
      if (location.is_number()) {
        atom.location.push_back(location.get<double>());
      } else if (location.is_array()) {
        for (const auto& t : location) {
          if (!t.is_number()) fail("atom locations must be numbers");
          atom.location.push_back(t.get<double>());
        }
      } else {
        fail("atom location must be a number or an array");
      }
      atom.weight = number(a, "weight");
      measure.atoms.push_back(std::move(atom));
    }
  }
  try {
    measure.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, e.what());
  }
  return measure;
}

}  // namespace radpd

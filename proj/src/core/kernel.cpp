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

#include "core/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace radpd {

namespace {

void check_parameter(double s) {
  if (!std::isfinite(s) || s < -1.0 || s > 1.0) {
    throw Error(ErrorCode::invalid_argument,
                "kernel parameter s must lie in [-1, 1], got " + std::to_string(s));
  }
}

std::vector<double> geometric_values(double s, int n_max) {
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  double power = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    out[n] = power;
    power *= s;
  }
  return out;
}

std::vector<double> component_values(const std::variant<GeometricForm, TreeEigenForm>& c,
                                     int n_max) {
  if (const auto* g = std::get_if<GeometricForm>(&c)) return geometric_values(g->s, n_max);
  const auto& t = std::get<TreeEigenForm>(c);
  return eval_P_upto(t.q, n_max, t.s);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

RadialKernel RadialKernel::table(std::vector<double> values, double l0, double l1) {
  if (values.empty()) {
    throw Error(ErrorCode::invalid_argument, "table kernel needs at least phi(0)");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "table value is not finite");
  }
  if (!std::isfinite(l0) || !std::isfinite(l1)) {
    throw Error(ErrorCode::invalid_argument, "declared limits must be finite");
  }
  return RadialKernel{TableForm{std::move(values), l0, l1}};
}

RadialKernel RadialKernel::geometric(double s) {
  check_parameter(s);
  return RadialKernel{GeometricForm{s}};
}

RadialKernel RadialKernel::tree_eigen(ExtendedDegree q, double s) {
  check_parameter(s);
  return RadialKernel{TreeEigenForm{q, s}};
}

RadialKernel RadialKernel::mixture(std::vector<MixtureComponent> components) {
  if (components.empty()) {
    throw Error(ErrorCode::invalid_argument, "mixture needs at least one component");
  }
  for (const auto& c : components) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
      throw Error(ErrorCode::invalid_argument, "mixture weights must be positive");
    }
    std::visit([](const auto& f) { check_parameter(f.s); }, c.form);
  }
  return RadialKernel{MixtureForm{std::move(components)}};
}

std::optional<int> RadialKernel::max_index() const {
  if (const auto* t = std::get_if<TableForm>(&form_)) {
    return static_cast<int>(t->values.size()) - 1;
  }
  return std::nullopt;
}

bool RadialKernel::evaluable_upto(int n) const {
  const auto m = max_index();
  return !m || n <= *m;
}

double RadialKernel::operator()(int n) const {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "kernel index must be non-negative");
  return std::visit(
      overloaded{
          [&](const TableForm& t) {
            if (n >= static_cast<int>(t.values.size())) {
              throw Error(ErrorCode::insufficient_data,
                          "table kernel has no value at n = " + std::to_string(n));
            }
            return t.values[n];
          },
          [&](const GeometricForm& g) { return n == 0 ? 1.0 : std::pow(g.s, n); },
          [&](const TreeEigenForm& t) { return eval_P(t.q, n, t.s); },
          [&](const MixtureForm& m) {
            double sum = 0.0;
            for (const auto& c : m.components) {
              sum += c.weight * component_values(c.form, n).back();
            }
            return sum;
          },
      },
      form_);
}

std::vector<double> RadialKernel::values(int n_max) const {
  if (n_max < 0) throw Error(ErrorCode::invalid_argument, "kernel index must be non-negative");
  return std::visit(
      overloaded{
          [&](const TableForm& t) {
            if (n_max >= static_cast<int>(t.values.size())) {
              throw Error(ErrorCode::insufficient_data,
                          "table kernel has " + std::to_string(t.values.size()) +
                              " values but phi(" + std::to_string(n_max) + ") is required");
            }
            return std::vector<double>(t.values.begin(), t.values.begin() + n_max + 1);
          },
          [&](const GeometricForm& g) { return geometric_values(g.s, n_max); },
          [&](const TreeEigenForm& t) { return eval_P_upto(t.q, n_max, t.s); },
          [&](const MixtureForm& m) {
            std::vector<double> sum(static_cast<std::size_t>(n_max) + 1, 0.0);
            for (const auto& c : m.components) {
              const auto v = component_values(c.form, n_max);
              for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += c.weight * v[i];
            }
            return sum;
          },
      },
      form_);
}

namespace {

std::vector<MixtureComponent> as_components(const RadialKernel& phi) {
  return std::visit(
      overloaded{
          [](const TableForm&) -> std::vector<MixtureComponent> { return {}; },
          [](const GeometricForm& g) { return std::vector<MixtureComponent>{{g, 1.0}}; },
          [](const TreeEigenForm& t) { return std::vector<MixtureComponent>{{t, 1.0}}; },
          [](const MixtureForm& m) { return m.components; },
      },
      phi.form());
}

std::pair<double, double> declared_or_closed_limits(const RadialKernel& phi) {
  if (const auto* t = std::get_if<TableForm>(&phi.form())) return {t->l0, t->l1};
  // Closed forms: only s = +-1 contributes a nonzero tail.
  double l0 = 0.0;
  double l1 = 0.0;
  for (const auto& c : as_components(phi)) {
    const double s = std::visit([](const auto& f) { return f.s; }, c.form);
    if (s == 1.0) {
      l0 += c.weight;
      l1 += c.weight;
    } else if (s == -1.0) {
      l0 += c.weight;
      l1 -= c.weight;
    }
  }
  return {l0, l1};
}

}  // namespace

RadialKernel positive_combination(double a, const RadialKernel& phi1, double b,
                                  const RadialKernel& phi2) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::invalid_argument, "combination coefficients must be non-negative");
  }
  const bool table1 = std::holds_alternative<TableForm>(phi1.form());
  const bool table2 = std::holds_alternative<TableForm>(phi2.form());
  if (table1 || table2) {
    const int n_max = std::min(phi1.max_index().value_or(std::numeric_limits<int>::max()),
                         phi2.max_index().value_or(std::numeric_limits<int>::max()));
    const auto v1 = phi1.values(n_max);
    const auto v2 = phi2.values(n_max);
    std::vector<double> v(v1.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * v1[i] + b * v2[i];
    const auto [l0a, l1a] = declared_or_closed_limits(phi1);
    const auto [l0b, l1b] = declared_or_closed_limits(phi2);
    return RadialKernel::table(std::move(v), a * l0a + b * l0b, a * l1a + b * l1b);
  }
  std::vector<MixtureComponent> components;
  for (auto c : as_components(phi1)) {
    c.weight *= a;
    if (c.weight > 0.0) components.push_back(c);
  }
  for (auto c : as_components(phi2)) {
    c.weight *= b;
    if (c.weight > 0.0) components.push_back(c);
  }
  return RadialKernel::mixture(std::move(components));
}

}  // namespace radpd

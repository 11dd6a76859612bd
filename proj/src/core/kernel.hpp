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

#ifndef RADPD_CORE_KERNEL_HPP
#define RADPD_CORE_KERNEL_HPP

#include <optional>
#include <variant>
#include <vector>

#include "core/polynomials.hpp"

namespace radpd {

/// phi(n) = s^n, with 0^0 = 1.
struct GeometricForm {
  double s;
};

/// phi(n) = P_n^{(q)}(s).
struct TreeEigenForm {
  ExtendedDegree q;
  double s;
};

/// Finite data phi(0..n_max) plus the declared even/odd tail limits.
struct TableForm {
  std::vector<double> values;
  double l0;
  double l1;
};

struct MixtureComponent {
  std::variant<GeometricForm, TreeEigenForm> form;
  double weight;
};

struct MixtureForm {
  std::vector<MixtureComponent> components;
};

/// A function phi on the naturals describing a radial kernel
/// psi(x, y) = phi(d(x, y)).
class RadialKernel {
 public:
  using Form = std::variant<TableForm, GeometricForm, TreeEigenForm, MixtureForm>;

  static RadialKernel table(std::vector<double> values, double l0, double l1);
  static RadialKernel geometric(double s);
  static RadialKernel tree_eigen(ExtendedDegree q, double s);
  static RadialKernel mixture(std::vector<MixtureComponent> components);

  const Form& form() const noexcept { return form_; }

  /// Largest index with a value; empty for closed forms (defined everywhere).
  std::optional<int> max_index() const;
  bool evaluable_upto(int n) const;

  /// Throws ErrorCode::insufficient_data past the end of a table.
  double operator()(int n) const;
  /// phi(0), ..., phi(n_max); throws ErrorCode::insufficient_data.
  std::vector<double> values(int n_max) const;

 private:
  explicit RadialKernel(Form form) : form_(std::move(form)) {}

  Form form_;
};

/// a*phi1 + b*phi2 for a, b >= 0. Closed forms combine into a mixture; a
/// table on either side yields a table over the common range.
RadialKernel positive_combination(double a, const RadialKernel& phi1, double b,
                                  const RadialKernel& phi2);

}  // namespace radpd

#endif  // RADPD_CORE_KERNEL_HPP

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

#ifndef RADPD_CORE_POLYNOMIALS_HPP
#define RADPD_CORE_POLYNOMIALS_HPP

#include <string>
#include <vector>

namespace radpd {

/// Branching parameter of the homogeneous tree T_q (every vertex has q+1
/// neighbours). Stored through its reciprocal; 1/q = 0 encodes q = infinity.
class ExtendedDegree {
 public:
  /// Throws ErrorCode::invalid_argument unless q >= 2.
  static ExtendedDegree finite(long q);
  static ExtendedDegree infinite() noexcept { return ExtendedDegree{0}; }
  /// Accepts 0 or 1/q for an integer q >= 2 (to within 1e-12 relative).
  static ExtendedDegree from_inverse(double inv_q);

  double inv_q() const noexcept { return inv_q_; }
  bool is_infinite() const noexcept { return q_ == 0; }
  /// The integer degree; throws for the infinite degree.
  long q() const;
  /// 1 + 1/q
  double plus() const noexcept { return 1.0 + inv_q_; }
  /// 1 - 1/q
  double minus() const noexcept { return 1.0 - inv_q_; }

  std::string to_string() const;

  friend bool operator==(const ExtendedDegree& a, const ExtendedDegree& b) noexcept {
    return a.q_ == b.q_;
  }

 private:
  explicit ExtendedDegree(long q) noexcept
      : q_(q), inv_q_(q == 0 ? 0.0 : 1.0 / static_cast<double>(q)) {}

  long q_;  // 0 for infinity
  double inv_q_;
};

// Both families satisfy the same three-term recurrence
//   R_{n+1}(x) = (1 + 1/q) x R_n(x) - (1/q) R_{n-1}(x)
// and differ only in R_1: P_1(x) = x, Q_1(x) = (1 + 1/q) x. With 1/q = 0
// both reduce to x^n. Evaluation is by forward recurrence, which is stable
// on [-1, 1] where |P_n| <= 1.

double eval_P(ExtendedDegree q, int n, double x);
double eval_Q(ExtendedDegree q, int n, double x);

/// P_0(x), ..., P_{n_max}(x) in one pass.
std::vector<double> eval_P_upto(ExtendedDegree q, int n_max, double x);
/// Q_0(x), ..., Q_{n_max}(x) in one pass.
std::vector<double> eval_Q_upto(ExtendedDegree q, int n_max, double x);

}  // namespace radpd

#endif  // RADPD_CORE_POLYNOMIALS_HPP

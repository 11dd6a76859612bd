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

#include "core/polynomials.hpp"

#include <cmath>

#include "core/error.hpp"

namespace radpd {

ExtendedDegree ExtendedDegree::finite(long q) {
  if (q < 2) {
    throw Error(ErrorCode::invalid_argument,
                "tree degree q must be >= 2, got " + std::to_string(q));
  }
  return ExtendedDegree{q};
}

ExtendedDegree ExtendedDegree::from_inverse(double inv_q) {
  if (inv_q == 0.0) return infinite();
  if (!(inv_q > 0.0) || inv_q > 0.5 + 1e-12) {
    throw Error(ErrorCode::invalid_argument, "1/q must lie in {0} U (0, 1/2]");
  }
  const double q = 1.0 / inv_q;
  const double rounded = std::round(q);
  if (std::abs(q - rounded) > 1e-12 * rounded) {
    throw Error(ErrorCode::invalid_argument, "1/q is not the reciprocal of an integer");
  }
  return finite(static_cast<long>(rounded));
}

long ExtendedDegree::q() const {
  if (is_infinite()) {
    throw Error(ErrorCode::invalid_argument, "degree is infinite");
  }
  return q_;
}

std::string ExtendedDegree::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(q_);
}

namespace {

std::vector<double> recurrence(ExtendedDegree q, int n_max, double x, double first) {
  if (n_max < 0) {
    throw Error(ErrorCode::invalid_argument, "polynomial index must be non-negative");
  }
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  out[0] = 1.0;
  if (n_max >= 1) out[1] = first;
  const double a = q.plus() * x;
  const double b = q.inv_q();
  for (int n = 1; n < n_max; ++n) {
    out[n + 1] = a * out[n] - b * out[n - 1];
  }
  return out;
}

double recurrence_at(ExtendedDegree q, int n, double x, double first) {
  if (n < 0) {
    throw Error(ErrorCode::invalid_argument, "polynomial index must be non-negative");
  }
  if (n == 0) return 1.0;
  const double a = q.plus() * x;
  const double b = q.inv_q();
  double prev = 1.0;
  double cur = first;
  for (int k = 1; k < n; ++k) {
    const double next = a * cur - b * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double eval_P(ExtendedDegree q, int n, double x) { return recurrence_at(q, n, x, x); }

double eval_Q(ExtendedDegree q, int n, double x) {
  return recurrence_at(q, n, x, q.plus() * x);
}

std::vector<double> eval_P_upto(ExtendedDegree q, int n_max, double x) {
  return recurrence(q, n_max, x, x);
}

std::vector<double> eval_Q_upto(ExtendedDegree q, int n_max, double x) {
  return recurrence(q, n_max, x, q.plus() * x);
}

}  // namespace radpd

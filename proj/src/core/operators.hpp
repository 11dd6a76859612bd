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

#ifndef RADPD_CORE_OPERATORS_HPP
#define RADPD_CORE_OPERATORS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/kernel.hpp"
#include "core/polynomials.hpp"

namespace radpd {

enum class OperatorKind { hankel, tree_b, product_b, multiradial_t, t_prime, smoothed };

const char* to_string(OperatorKind kind) noexcept;

/// Lexicographic flattening of the box {0..side-1}^dims; the first
/// coordinate is the most significant.
class BoxIndex {
 public:
  BoxIndex(int dims, int side);

  int dims() const noexcept { return dims_; }
  int side() const noexcept { return side_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t flatten(std::span<const int> multi) const;
  std::vector<int> unflatten(std::size_t flat) const;

 private:
  int dims_;
  int side_;
  std::size_t size_;
};

/// Finite section of one of the kernel operators, indexed by {0..M-1} or by
/// the flattened box {0..M-1}^N.
struct TruncatedOperator {
  OperatorKind kind;
  int truncation;  // M
  int dims;        // N; 1 for single-tree operators
  Eigen::MatrixXd entries;
  /// Sum of |diagonal entries| just past the truncation, over as many further
  /// indices as phi's range allows. A convergence indicator, not a bound.
  double tail_heuristic = 0.0;

  BoxIndex index() const { return BoxIndex(dims, truncation); }
};

/// Default row cap for product-box operators.
inline constexpr std::size_t kDefaultMaxRows = 4096;

/// H_{i,j} = phi(i+j) - phi(i+j+2).
TruncatedOperator build_hankel(const RadialKernel& phi, int M);

/// B_{i,j} = sum_{k<=min(i,j)} q^{-k} (phi(i+j-2k) - phi(i+j-2k+2)).
/// Coincides with build_hankel when q is infinite.
TruncatedOperator build_tree_b(const RadialKernel& phi, ExtendedDegree q, int M);

/// Same sum with weights r^{-k} for a real r >= 1.
TruncatedOperator build_smoothed(const RadialKernel& phi, double r, int M);

/// Product-tree operator on the box {0..M-1}^N, N = qs.size():
///   B_{m,n} = sum_{l <= m^n} prod_i q_i^{-l_i}
///             sum_k C(N,k) (-1)^k phi(|m|+|n|-2|l|+2k).
/// Throws ErrorCode::dimension_too_large when M^N exceeds max_rows.
TruncatedOperator build_product_b(const RadialKernel& phi, std::span<const ExtendedDegree> qs,
                                  int M, std::size_t max_rows = kDefaultMaxRows);

using MultiRadialFunction = std::function<double(std::span<const int>)>;

/// phi~(n) = phi(|n|).
MultiRadialFunction radial_as_multiradial(RadialKernel phi);

/// T_{m,n} = sum_{I subset [N]} (-1)^{|I|} phi~(m + n + 2 chi^I).
TruncatedOperator build_multiradial_t(const MultiRadialFunction& phi, int N, int M,
                                      std::size_t max_rows = kDefaultMaxRows);

/// T' = prod_i (1 - 1/q_i) (I - tau_i/q_i)^{-1} T with tau_i(A) = S_i A S_i^*,
/// evaluated exactly inside the box.
TruncatedOperator apply_smoothing_product(const TruncatedOperator& T,
                                          std::span<const ExtendedDegree> qs);

/// Row-major CSV with 17 significant digits.
std::string to_csv(const Eigen::MatrixXd& matrix);

}  // namespace radpd

#endif  // RADPD_CORE_OPERATORS_HPP

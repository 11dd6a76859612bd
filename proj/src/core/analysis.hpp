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

#ifndef RADPD_CORE_ANALYSIS_HPP
#define RADPD_CORE_ANALYSIS_HPP

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "core/kernel.hpp"
#include "core/operators.hpp"

namespace radpd {

struct SpectralStats {
  std::vector<double> eigenvalues;  // ascending
  double trace = 0.0;
  double trace_norm = 0.0;  // sum of |eigenvalues|
  double min_eigenvalue = 0.0;
  double spectral_norm = 0.0;
  double asymmetry = 0.0;  // max |A - A^T| / 2 before symmetrization
  /// Unit eigenvector of min_eigenvalue; only filled on request.
  Eigen::VectorXd min_eigenvector;
};

/// Eigen-decomposes (A + A^T)/2. Throws ErrorCode::not_symmetric when the
/// asymmetry exceeds 1e-10 * max|A|.
SpectralStats spectral_stats(const Eigen::MatrixXd& A, bool with_min_eigenvector = false);

/// Even and odd tail limits of phi. c_plus = l0 + l1 and c_minus = l0 - l1;
/// the point masses at +1 and -1 of the representing measure are half of
/// these.
struct LimitsPair {
  double l0 = 0.0;
  double l1 = 0.0;

  double c_plus() const noexcept { return l0 + l1; }
  double c_minus() const noexcept { return l0 - l1; }
  double mass_plus() const noexcept { return 0.5 * (l0 + l1); }
  double mass_minus() const noexcept { return 0.5 * (l0 - l1); }
};

/// Declared limits for tables; exact limits for closed forms (only s = +-1
/// has a nonzero tail).
LimitsPair extract_limits(const RadialKernel& phi);

enum class Verdict { member, non_member, inconclusive };

const char* to_string(Verdict verdict) noexcept;

/// Negativity certificate in the operator's index basis.
struct Witness {
  std::vector<std::vector<int>> indices;  // multi-indices of the listed components
  std::vector<double> components;
  double quadratic_form = 0.0;  // v^T B v for the unit vector v
};

struct MembershipReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<ExtendedDegree> space;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double trace_norm = 0.0;
  double spectral_norm = 0.0;
  LimitsPair limits;
  bool limits_satisfied = false;
  std::optional<Witness> witness;
  double tail_heuristic = 0.0;
  int truncation = 0;
};

struct CheckOptions {
  double tol = 1e-10;
  /// Verdict is inconclusive when tail_heuristic exceeds this fraction of
  /// the trace norm.
  double inconclusive_fraction = 0.01;
  std::size_t max_rows = kDefaultMaxRows;
};

/// B for the space: the tree operator for one factor (Hankel for q = inf),
/// the product operator otherwise.
TruncatedOperator build_space_operator(const RadialKernel& phi,
                                       std::span<const ExtendedDegree> qs, int M,
                                       std::size_t max_rows = kDefaultMaxRows);

MembershipReport check_positive_definite(const RadialKernel& phi,
                                         std::span<const ExtendedDegree> qs, int M,
                                         const CheckOptions& options = {});

/// ||prod(1 - 1/q_i) B||_{S_1} + |c_+| + |c_-| with c_+- the boundary masses
/// (l0 +- l1)/2, the normalization under which a positive definite phi has
/// norm phi(0).
double cb_norm_estimate(const RadialKernel& phi, std::span<const ExtendedDegree> qs, int M,
                        std::size_t max_rows = kDefaultMaxRows);

struct SmoothedWitness {
  bool in_rq = false;
  double entry11 = 0.0;
  double closed_form = 0.0;
  bool agrees = false;  // |entry11 - closed_form| <= 1e-14
};

/// phi = P^{(q)}(0): a member on T_q whose (q+eps)-smoothed operator has a
/// negative (1,1) entry (1 + 1/q)(1/(q+eps) - 1/q).
SmoothedWitness corollary5_witness(long q, double eps, int M);

struct ProductWitness {
  bool in_rq = false;
  double quad_form = 0.0;    // v^T B v with B from build_product_b
  double closed_form = 0.0;  // -2 (1 + 1/q)^2 / q
  double table_form = 0.0;   // -2/q, the same form with (1 + 1/q)^2 divided out
  bool agrees = false;       // |quad_form - closed_form| <= 1e-14
};

/// phi = P^{(q)}(0) on T_q x T_q with v = delta_(0,1) + delta_(1,0).
ProductWitness corollary6_witness(long q, int M);

/// Closed-form entry of B / (1 + 1/q)^2 for phi = P^{(q)}(0) on T_q x T_q:
/// (-1/q)^{(|m|+|n|)/2} prod_i (1 + (-1)^{min(m_i, n_i)}) / 2 when |m|+|n| is
/// even, 0 otherwise.
double corollary6_table_entry(long q, std::span<const int> m, std::span<const int> n);

}  // namespace radpd

#endif  // RADPD_CORE_ANALYSIS_HPP

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

#ifndef RADPD_CORE_MOMENTS_HPP
#define RADPD_CORE_MOMENTS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "core/kernel.hpp"
#include "core/operators.hpp"

namespace radpd {

struct Atom {
  std::vector<double> location;
  double weight = 0.0;
};

/// Finite positive measure on [-1,1]^dims: interior atoms plus point masses
/// at (1,...,1) and (-1,...,-1).
struct DiscreteMeasure {
  int dims = 1;
  std::vector<Atom> atoms;
  double c_plus = 0.0;
  double c_minus = 0.0;

  double total_mass() const;
  /// Throws ErrorCode::invalid_argument on negative masses, wrong location
  /// lengths, or coordinates outside [-1, 1].
  void validate() const;
};

struct MomentOptions {
  double tol = 1e-10;              // positivity check on B
  double rank_tolerance = 1e-12;   // relative eigenvalue floor of B
  double snap = 1e-6;              // atoms with |theta| > 1 - snap are not interior
  double merge_tolerance = 1e-8;   // coincident eigenvalues are merged
  double clamp_tolerance = 1e-9;   // spectrum may leave [-1, 1] by this much
  double commutator_tolerance = 1e-6;
  std::uint64_t seed = 0x5eedULL;
  std::size_t max_rows = kDefaultMaxRows;
};

struct MomentSolution {
  /// Representing measure: phi(n) = integral of prod_i P_{n_i}(t_i).
  DiscreteMeasure measure;
  /// Spectral measure of the shift-type operators at delta_0 before the
  /// division by prod (1 + 1/q_i)(1 - theta_i^2); no boundary atoms.
  DiscreteMeasure raw;
  int rank = 0;
  double symmetrization_defect = 0.0;
  /// Raw mass of atoms that fell in the snap band next to +-1.
  double boundary_band_mass = 0.0;
};

/// (1 + 1/q)^{-1} (S + S^T/q) with S the forward shift; S itself for q = inf.
Eigen::MatrixXd build_psi_matrix(ExtendedDegree q, int M);

/// Throws ErrorCode::not_positive, ErrorCode::limits_violated or
/// ErrorCode::spectrum_out_of_range.
MomentSolution spectral_measure_tree(const RadialKernel& phi, ExtendedDegree q, int M,
                                     const MomentOptions& options = {});

/// Joint spectral measure of Psi_1..Psi_N. Also throws
/// ErrorCode::joint_diagonalization_failed.
MomentSolution spectral_measure_product(const RadialKernel& phi,
                                        std::span<const ExtendedDegree> qs, int M,
                                        const MomentOptions& options = {});

/// c_+ + (-1)^{|n|} c_- + sum_k w_k prod_i P_{n_i}^{(q_i)}(theta_{k,i}).
double reconstruct(const DiscreteMeasure& measure, std::span<const ExtendedDegree> qs,
                   std::span<const int> n);

/// max_{n <= n_max} |phi(n) - phi(n+2) - sum_k u_k Q_n(theta_k)| over a raw
/// one-dimensional measure.
double verify_q_moments(const RadialKernel& phi, const DiscreteMeasure& raw, ExtendedDegree q,
                        int n_max);

}  // namespace radpd

#endif  // RADPD_CORE_MOMENTS_HPP

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

#include "core/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/polynomials.hpp"

namespace radpd {

double DiscreteMeasure::total_mass() const {
  double mass = c_plus + c_minus;
  for (const auto& a : atoms) mass += a.weight;
  return mass;
}

void DiscreteMeasure::validate() const {
  if (dims < 1) throw Error(ErrorCode::invalid_argument, "measure dimension must be positive");
  if (!(c_plus >= 0.0) || !(c_minus >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "boundary masses must be non-negative");
  }
  for (const auto& a : atoms) {
    if (static_cast<int>(a.location.size()) != dims) {
      throw Error(ErrorCode::invalid_argument, "atom location has the wrong dimension");
    }
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      throw Error(ErrorCode::invalid_argument, "atom weights must be non-negative");
    }
    for (double t : a.location) {
      if (!(t >= -1.0 && t <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "atom coordinates must lie in [-1, 1]");
      }
    }
  }
}

Eigen::MatrixXd build_psi_matrix(ExtendedDegree q, int M) {
  if (M < 1) throw Error(ErrorCode::invalid_argument, "truncation M must be positive");
  const double c = 1.0 / q.plus();
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(M, M);
  for (int j = 0; j + 1 < M; ++j) {
    psi(j + 1, j) = c;
    psi(j, j + 1) = c * q.inv_q();
  }
  return psi;
}

namespace {

// Gram matrix B of delta_0..delta_{n-1} in the B-metric, together with the
// matrices G_i(a, b) = <Psi_i delta_b, delta_a>_B of the shift-type operators.
struct MetricProblem {
  Eigen::MatrixXd gram;
  std::vector<Eigen::MatrixXd> shifts;
  std::vector<double> plus;  // 1 + 1/q_i
};

void require_positive(const RadialKernel& phi, std::span<const ExtendedDegree> qs, int M,
                      const MomentOptions& options) {
  CheckOptions check;
  check.tol = options.tol;
  check.max_rows = options.max_rows;
  const MembershipReport report = check_positive_definite(phi, qs, M, check);
  if (report.verdict != Verdict::non_member) return;
  if (report.witness) {
    throw Error(ErrorCode::not_positive,
                "B is not positive: min eigenvalue " + std::to_string(report.min_eigenvalue));
  }
  throw Error(ErrorCode::limits_violated, "tail limits violate |l1| <= l0");
}

MetricProblem tree_problem(const RadialKernel& phi, ExtendedDegree q, int M) {
  MetricProblem problem;
  problem.plus = {q.plus()};
  if (phi.evaluable_upto(2 * (M + 1))) {
    // One extra row and column make the compression of Psi exact.
    const Eigen::MatrixXd Bx = build_tree_b(phi, q, M + 1).entries;
    const Eigen::MatrixXd psi = build_psi_matrix(q, M + 1);
    problem.gram = Bx.topLeftCorner(M, M);
    problem.shifts.push_back(Bx.topRows(M) * psi.leftCols(M));
  } else {
    problem.gram = build_tree_b(phi, q, M).entries;
    problem.shifts.push_back(problem.gram * build_psi_matrix(q, M));
  }
  return problem;
}

MetricProblem product_problem(const RadialKernel& phi, std::span<const ExtendedDegree> qs, int M,
                              const MomentOptions& options) {
  const int N = static_cast<int>(qs.size());
  const BoxIndex box(N, M);
  const BoxIndex ext(N, M + 1);
  const bool extended =
      ext.size() <= 4 * options.max_rows && phi.evaluable_upto(2 * N * (M + 1));
  const BoxIndex& outer = extended ? ext : box;
  const Eigen::MatrixXd Bx =
      build_product_b(phi, qs, outer.side(), std::max(options.max_rows, outer.size())).entries;

  std::vector<Eigen::Index> sel(box.size());
  for (std::size_t a = 0; a < box.size(); ++a) {
    sel[a] = static_cast<Eigen::Index>(outer.flatten(box.unflatten(a)));
  }
  const auto n = static_cast<Eigen::Index>(box.size());
  MetricProblem problem;
  problem.gram.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) problem.gram(a, b) = Bx(sel[a], sel[b]);
  }
  for (int i = 0; i < N; ++i) {
    const double c = 1.0 / qs[i].plus();
    const double r = qs[i].inv_q();
    problem.plus.push_back(qs[i].plus());
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index b = 0; b < n; ++b) {
      auto multi = box.unflatten(static_cast<std::size_t>(b));
      // Psi_i delta_m = c (delta_{m + e_i} + r delta_{m - e_i})
      multi[i] += 1;
      if (multi[i] < outer.side()) {
        const auto up = static_cast<Eigen::Index>(outer.flatten(multi));
        for (Eigen::Index a = 0; a < n; ++a) G(a, b) += c * Bx(sel[a], up);
      }
      multi[i] -= 2;
      if (multi[i] >= 0 && r != 0.0) {
        const auto down = static_cast<Eigen::Index>(outer.flatten(multi));
        for (Eigen::Index a = 0; a < n; ++a) G(a, b) += c * r * Bx(sel[a], down);
      }
    }
    problem.shifts.push_back(std::move(G));
  }
  return problem;
}

struct RitzAtom {
  std::vector<double> theta;
  double raw_weight;
};

MomentSolution solve_metric_problem(const MetricProblem& problem, const LimitsPair& limits,
                                    const MomentOptions& options) {
  const int dims = static_cast<int>(problem.shifts.size());
  MomentSolution solution;
  solution.measure.dims = dims;
  solution.raw.dims = dims;
  solution.measure.c_plus = limits.mass_plus();
  solution.measure.c_minus = limits.mass_minus();
  for (const auto& G : problem.shifts) {
    solution.symmetrization_defect = std::max(
        solution.symmetrization_defect, 0.5 * (G - G.transpose()).cwiseAbs().maxCoeff());
  }

  // Deflate the null space of B and pass to B-orthonormal coordinates.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram_solver(problem.gram);
  const Eigen::VectorXd& lambda = gram_solver.eigenvalues();
  const double lambda_max = lambda.size() > 0 ? lambda.maxCoeff() : 0.0;
  if (!(lambda_max > 0.0)) return solution;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) > options.rank_tolerance * lambda_max) kept.push_back(k);
  }
  const auto rank = static_cast<Eigen::Index>(kept.size());
  solution.rank = static_cast<int>(rank);
  const auto rows = problem.gram.rows();
  Eigen::MatrixXd W(rows, rank);
  Eigen::RowVectorXd root0(rank);  // row 0 of B W
  for (Eigen::Index k = 0; k < rank; ++k) {
    const double l = lambda(kept[k]);
    W.col(k) = gram_solver.eigenvectors().col(kept[k]) / std::sqrt(l);
    root0(k) = gram_solver.eigenvectors()(0, kept[k]) * std::sqrt(l);
  }
  std::vector<Eigen::MatrixXd> A;
  double scale = 1.0;
  for (const auto& G : problem.shifts) {
    const Eigen::MatrixXd sym = 0.5 * (G + G.transpose());
    A.push_back(W.transpose() * sym * W);
    A.back() = 0.5 * (A.back() + A.back().transpose()).eval();
    scale = std::max(scale, A.back().cwiseAbs().maxCoeff());
  }

  Eigen::MatrixXd Y;
  if (dims == 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A[0]);
    Y = solver.eigenvectors();
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> coefficient(0.5, 1.5);
    bool converged = false;
    double residual = 0.0;
    for (int attempt = 0; attempt < 3 && !converged; ++attempt) {
      Eigen::MatrixXd C = Eigen::MatrixXd::Zero(rank, rank);
      for (const auto& Ai : A) C += coefficient(rng) * Ai;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(C);
      Y = solver.eigenvectors();
      residual = 0.0;
      for (const auto& Ai : A) {
        const Eigen::MatrixXd AY = Ai * Y;
        for (Eigen::Index k = 0; k < rank; ++k) {
          const double theta = Y.col(k).dot(AY.col(k));
          residual = std::max(residual, (AY.col(k) - theta * Y.col(k)).norm());
        }
      }
      converged = residual <= options.commutator_tolerance * scale;
    }
    if (!converged) {
      throw Error(ErrorCode::joint_diagonalization_failed,
                  "shift operators are not jointly diagonal: residual " +
                      std::to_string(residual));
    }
  }

  std::vector<RitzAtom> ritz;
  for (Eigen::Index k = 0; k < rank; ++k) {
    RitzAtom atom;
    for (const auto& Ai : A) {
      double theta = Y.col(k).dot(Ai * Y.col(k));
      if (std::abs(theta) > 1.0) {
        if (std::abs(theta) > 1.0 + options.clamp_tolerance) {
          throw Error(ErrorCode::spectrum_out_of_range,
                      "shift spectrum point " + std::to_string(theta) + " outside [-1, 1]");
        }
        theta = std::copysign(1.0, theta);
      }
      atom.theta.push_back(theta);
    }
    const double amplitude = root0.dot(Y.col(k));
    atom.raw_weight = amplitude * amplitude;
    ritz.push_back(std::move(atom));
  }

  std::sort(ritz.begin(), ritz.end(),
            [](const RitzAtom& a, const RitzAtom& b) { return a.theta < b.theta; });
  std::vector<RitzAtom> merged;
  for (auto& atom : ritz) {
    if (!merged.empty()) {
      auto& last = merged.back();
      double gap = 0.0;
      for (int i = 0; i < dims; ++i) gap = std::max(gap, std::abs(last.theta[i] - atom.theta[i]));
      if (gap <= options.merge_tolerance) {
        const double total = last.raw_weight + atom.raw_weight;
        if (total > 0.0) {
          for (int i = 0; i < dims; ++i) {
            last.theta[i] =
                (last.theta[i] * last.raw_weight + atom.theta[i] * atom.raw_weight) / total;
          }
        }
        last.raw_weight = total;
        continue;
      }
    }
    merged.push_back(std::move(atom));
  }

  double raw_total = 0.0;
  for (const auto& atom : merged) raw_total += atom.raw_weight;
  for (const auto& atom : merged) {
    if (!(atom.raw_weight > 1e-14 * raw_total)) continue;
    const bool boundary = std::any_of(atom.theta.begin(), atom.theta.end(), [&](double t) {
      return std::abs(t) > 1.0 - options.snap;
    });
    if (boundary) {
      solution.boundary_band_mass += atom.raw_weight;
      continue;
    }
    double density = 1.0;
    for (int i = 0; i < dims; ++i) {
      density *= problem.plus[i] * (1.0 - atom.theta[i] * atom.theta[i]);
    }
    solution.raw.atoms.push_back({atom.theta, atom.raw_weight});
    solution.measure.atoms.push_back({atom.theta, atom.raw_weight / density});
  }
  return solution;
}

}  // namespace

MomentSolution spectral_measure_tree(const RadialKernel& phi, ExtendedDegree q, int M,
                                     const MomentOptions& options) {
  require_positive(phi, std::span(&q, 1), M, options);
  return solve_metric_problem(tree_problem(phi, q, M), extract_limits(phi), options);
}

MomentSolution spectral_measure_product(const RadialKernel& phi,
                                        std::span<const ExtendedDegree> qs, int M,
                                        const MomentOptions& options) {
  if (qs.empty()) throw Error(ErrorCode::invalid_argument, "product needs at least one factor");
  if (qs.size() == 1) return spectral_measure_tree(phi, qs[0], M, options);
  require_positive(phi, qs, M, options);
  return solve_metric_problem(product_problem(phi, qs, M, options), extract_limits(phi),
                              options);
}

double reconstruct(const DiscreteMeasure& measure, std::span<const ExtendedDegree> qs,
                   std::span<const int> n) {
  if (static_cast<std::size_t>(measure.dims) != qs.size() || qs.size() != n.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "measure dimension, degree list and multi-index length differ");
  }
  int total = 0;
  for (int k : n) {
    if (k < 0) throw Error(ErrorCode::invalid_argument, "multi-index must be non-negative");
    total += k;
  }
  double value = measure.c_plus + (total % 2 == 0 ? 1.0 : -1.0) * measure.c_minus;
  for (const auto& atom : measure.atoms) {
    double product = atom.weight;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      product *= eval_P(qs[i], n[i], atom.location[i]);
    }
    value += product;
  }
  return value;
}

double verify_q_moments(const RadialKernel& phi, const DiscreteMeasure& raw, ExtendedDegree q,
                        int n_max) {
  if (raw.dims != 1) {
    throw Error(ErrorCode::dimension_mismatch, "Q-moment check needs a one-dimensional measure");
  }
  const auto values = phi.values(n_max + 2);
  std::vector<double> moments(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (const auto& atom : raw.atoms) {
    const auto Q = eval_Q_upto(q, n_max, atom.location[0]);
    for (int n = 0; n <= n_max; ++n) moments[n] += atom.weight * Q[n];
  }
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    worst = std::max(worst, std::abs(values[n] - values[n + 2] - moments[n]));
  }
  return worst;
}

}  // namespace radpd

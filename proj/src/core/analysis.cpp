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

#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "core/error.hpp"

namespace radpd {

SpectralStats spectral_stats(const Eigen::MatrixXd& A, bool with_min_eigenvector) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "spectral statistics need a square matrix");
  }
  SpectralStats stats;
  if (A.rows() == 0) return stats;
  const double scale = A.cwiseAbs().maxCoeff();
  stats.asymmetry = 0.5 * (A - A.transpose()).cwiseAbs().maxCoeff();
  if (stats.asymmetry > 1e-10 * scale) {
    throw Error(ErrorCode::not_symmetric,
                "operator asymmetry " + std::to_string(stats.asymmetry) + " exceeds tolerance");
  }
  const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      sym, with_min_eigenvector ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::invalid_argument, "symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  stats.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  stats.trace = sym.trace();
  stats.trace_norm = ev.cwiseAbs().sum();
  stats.min_eigenvalue = ev(0);
  stats.spectral_norm = ev.cwiseAbs().maxCoeff();
  if (with_min_eigenvector) stats.min_eigenvector = solver.eigenvectors().col(0);
  return stats;
}

LimitsPair extract_limits(const RadialKernel& phi) {
  const auto component_limits = [](double s, double weight) {
    if (s == 1.0) return LimitsPair{weight, weight};
    if (s == -1.0) return LimitsPair{weight, -weight};
    return LimitsPair{0.0, 0.0};
  };
  const auto& form = phi.form();
  if (const auto* t = std::get_if<TableForm>(&form)) return {t->l0, t->l1};
  if (const auto* g = std::get_if<GeometricForm>(&form)) return component_limits(g->s, 1.0);
  if (const auto* e = std::get_if<TreeEigenForm>(&form)) return component_limits(e->s, 1.0);
  LimitsPair sum;
  for (const auto& c : std::get<MixtureForm>(form).components) {
    const double s = std::visit([](const auto& f) { return f.s; }, c.form);
    const auto part = component_limits(s, c.weight);
    sum.l0 += part.l0;
    sum.l1 += part.l1;
  }
  return sum;
}

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::member: return "member";
    case Verdict::non_member: return "non_member";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

TruncatedOperator build_space_operator(const RadialKernel& phi,
                                       std::span<const ExtendedDegree> qs, int M,
                                       std::size_t max_rows) {
  if (qs.empty()) throw Error(ErrorCode::invalid_argument, "space needs at least one tree");
  if (qs.size() == 1) return build_tree_b(phi, qs[0], M);
  return build_product_b(phi, qs, M, max_rows);
}

namespace {

// Truncation for deciding whether a witness kernel lies in R_q.
constexpr int kMembershipTruncation = 64;

Witness make_witness(const TruncatedOperator& B, const Eigen::VectorXd& v) {
  Witness w;
  Eigen::VectorXd unit = v;
  Eigen::Index top = 0;
  unit.cwiseAbs().maxCoeff(&top);
  if (unit(top) < 0) unit = -unit;  // fix the sign for reproducible output
  const double cutoff = 1e-8 * std::abs(unit(top));
  const BoxIndex box = B.index();
  for (Eigen::Index i = 0; i < unit.size(); ++i) {
    if (std::abs(unit(i)) < cutoff) continue;
    w.indices.push_back(box.unflatten(static_cast<std::size_t>(i)));
    w.components.push_back(unit(i));
  }
  w.quadratic_form = unit.dot(B.entries * unit);
  return w;
}

}  // namespace

MembershipReport check_positive_definite(const RadialKernel& phi,
                                         std::span<const ExtendedDegree> qs, int M,
                                         const CheckOptions& options) {
  const TruncatedOperator B = build_space_operator(phi, qs, M, options.max_rows);
  MembershipReport report;
  report.space.assign(qs.begin(), qs.end());
  report.truncation = M;
  report.tail_heuristic = B.tail_heuristic;
  report.limits = extract_limits(phi);
  report.limits_satisfied =
      std::abs(report.limits.l1) <= report.limits.l0 + options.tol;

  SpectralStats stats = spectral_stats(B.entries);
  const double threshold = -options.tol * std::max(1.0, stats.spectral_norm);
  if (stats.min_eigenvalue < threshold) {
    stats = spectral_stats(B.entries, true);
    report.witness = make_witness(B, stats.min_eigenvector);
  }
  report.min_eigenvalue = stats.min_eigenvalue;
  report.trace = stats.trace;
  report.trace_norm = stats.trace_norm;
  report.spectral_norm = stats.spectral_norm;

  if (stats.min_eigenvalue < threshold || !report.limits_satisfied) {
    report.verdict = Verdict::non_member;
  } else if (report.tail_heuristic > options.inconclusive_fraction * stats.trace_norm) {
    report.verdict = Verdict::inconclusive;
  } else {
    report.verdict = Verdict::member;
  }
  return report;
}

double cb_norm_estimate(const RadialKernel& phi, std::span<const ExtendedDegree> qs, int M,
                        std::size_t max_rows) {
  const TruncatedOperator B = build_space_operator(phi, qs, M, max_rows);
  double alpha = 1.0;
  for (const auto& q : qs) alpha *= q.minus();
  const SpectralStats stats = spectral_stats(B.entries);
  const LimitsPair limits = extract_limits(phi);
  return alpha * stats.trace_norm + std::abs(limits.mass_plus()) + std::abs(limits.mass_minus());
}

SmoothedWitness corollary5_witness(long q, double eps, int M) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
  }
  if (M < 2) throw Error(ErrorCode::invalid_argument, "the witness needs M >= 2");
  const ExtendedDegree degree = ExtendedDegree::finite(q);
  const RadialKernel phi = RadialKernel::tree_eigen(degree, 0.0);
  SmoothedWitness out;
  out.in_rq = check_positive_definite(phi, std::span(&degree, 1), std::max(M, kMembershipTruncation))
                  .verdict == Verdict::member;
  const double r = static_cast<double>(q) + eps;
  out.entry11 = build_smoothed(phi, r, M).entries(1, 1);
  out.closed_form = degree.plus() * (1.0 / r - degree.inv_q());
  out.agrees = std::abs(out.entry11 - out.closed_form) <= 1e-14;
  return out;
}

ProductWitness corollary6_witness(long q, int M) {
  if (M < 2) throw Error(ErrorCode::invalid_argument, "the witness needs M >= 2");
  const ExtendedDegree degree = ExtendedDegree::finite(q);
  const RadialKernel phi = RadialKernel::tree_eigen(degree, 0.0);
  ProductWitness out;
  out.in_rq = check_positive_definite(phi, std::span(&degree, 1), std::max(M, kMembershipTruncation))
                  .verdict == Verdict::member;
  const ExtendedDegree pair[] = {degree, degree};
  const TruncatedOperator B = build_product_b(phi, pair, M);
  const BoxIndex box = B.index();
  const int a[] = {0, 1};
  const int b[] = {1, 0};
  Eigen::VectorXd v = Eigen::VectorXd::Zero(B.entries.rows());
  v(static_cast<Eigen::Index>(box.flatten(a))) = 1.0;
  v(static_cast<Eigen::Index>(box.flatten(b))) = 1.0;
  out.quad_form = v.dot(B.entries * v);
  out.table_form = -2.0 * degree.inv_q();
  out.closed_form = degree.plus() * degree.plus() * out.table_form;
  out.agrees = std::abs(out.quad_form - out.closed_form) <= 1e-14;
  return out;
}

double corollary6_table_entry(long q, std::span<const int> m, std::span<const int> n) {
  const ExtendedDegree degree = ExtendedDegree::finite(q);
  if (m.size() != n.size()) {
    throw Error(ErrorCode::dimension_mismatch, "multi-indices differ in length");
  }
  int total = 0;
  double parity = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    total += m[i] + n[i];
    if (std::min(m[i], n[i]) % 2 != 0) parity = 0.0;
  }
  if (total % 2 != 0) return 0.0;
  return parity * std::pow(-degree.inv_q(), total / 2);
}

}  // namespace radpd

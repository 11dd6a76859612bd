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

#include "radpd/radpd.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/graphs.hpp"
#include "core/kernel.hpp"
#include "core/moments.hpp"
#include "core/operators.hpp"
#include "core/polynomials.hpp"
#include "core/serialization.hpp"

struct radpd_kernel {
  radpd::RadialKernel phi;
};

struct radpd_operator {
  radpd::TruncatedOperator op;
};

struct radpd_measure {
  radpd::DiscreteMeasure measure;
  std::optional<radpd::DiscreteMeasure> raw;
};

struct radpd_graph {
  radpd::GraphBall g;
};

namespace {

thread_local std::string g_last_error;

radpd_status status_of(radpd::ErrorCode code) {
  using radpd::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return RADPD_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return RADPD_ERR_PARSE;
    case ErrorCode::insufficient_data: return RADPD_ERR_INSUFFICIENT_DATA;
    case ErrorCode::dimension_too_large: return RADPD_ERR_DIMENSION_TOO_LARGE;
    case ErrorCode::dimension_mismatch: return RADPD_ERR_DIMENSION_MISMATCH;
    case ErrorCode::not_symmetric: return RADPD_ERR_NOT_SYMMETRIC;
    case ErrorCode::not_positive: return RADPD_ERR_NOT_POSITIVE;
    case ErrorCode::limits_violated: return RADPD_ERR_LIMITS_VIOLATED;
    case ErrorCode::joint_diagonalization_failed: return RADPD_ERR_JOINT_DIAGONALIZATION_FAILED;
    case ErrorCode::spectrum_out_of_range: return RADPD_ERR_SPECTRUM_OUT_OF_RANGE;
    case ErrorCode::too_large: return RADPD_ERR_TOO_LARGE;
    case ErrorCode::not_median: return RADPD_ERR_NOT_MEDIAN;
    case ErrorCode::io: return RADPD_ERR_IO;
  }
  return RADPD_ERR_INTERNAL;
}

template <class F>
radpd_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return RADPD_OK;
  } catch (const radpd::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RADPD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RADPD_ERR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw radpd::Error(radpd::ErrorCode::invalid_argument, message);
}

radpd::ExtendedDegree degree(long q) {
  return q == RADPD_Q_INFINITY ? radpd::ExtendedDegree::infinite()
                               : radpd::ExtendedDegree::finite(q);
}

std::vector<radpd::ExtendedDegree> degrees(const long* qs, size_t dims) {
  require(qs != nullptr && dims > 0, "degree list is empty");
  std::vector<radpd::ExtendedDegree> out;
  for (size_t i = 0; i < dims; ++i) out.push_back(degree(qs[i]));
  return out;
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

radpd::CheckOptions check_options(double tol) {
  radpd::CheckOptions options;
  options.tol = tol;
  return options;
}

}  // namespace

extern "C" {

const char* radpd_version(void) { return "0.1.0"; }

const char* radpd_last_error(void) { return g_last_error.c_str(); }

const char* radpd_status_name(radpd_status status) {
  switch (status) {
    case RADPD_OK: return "Ok";
    case RADPD_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case RADPD_ERR_PARSE: return "ParseError";
    case RADPD_ERR_INSUFFICIENT_DATA: return "InsufficientData";
    case RADPD_ERR_DIMENSION_TOO_LARGE: return "DimensionTooLarge";
    case RADPD_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case RADPD_ERR_NOT_SYMMETRIC: return "NotSymmetric";
    case RADPD_ERR_NOT_POSITIVE: return "NotPositive";
    case RADPD_ERR_LIMITS_VIOLATED: return "LimitsViolated";
    case RADPD_ERR_JOINT_DIAGONALIZATION_FAILED: return "JointDiagonalizationFailed";
    case RADPD_ERR_SPECTRUM_OUT_OF_RANGE: return "SpectrumOutOfRange";
    case RADPD_ERR_TOO_LARGE: return "TooLarge";
    case RADPD_ERR_NOT_MEDIAN: return "NotMedian";
    case RADPD_ERR_IO: return "IoError";
    case RADPD_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

void radpd_string_free(char* text) { std::free(text); }

radpd_status radpd_eval_P(long q, int n, double x, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = radpd::eval_P(degree(q), n, x);
  });
}

radpd_status radpd_eval_Q(long q, int n, double x, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = radpd::eval_Q(degree(q), n, x);
  });
}

radpd_status radpd_kernel_from_json(const char* json, radpd_kernel** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new radpd_kernel{radpd::kernel_from_string(json)};
  });
}

radpd_status radpd_kernel_geometric(double s, radpd_kernel** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new radpd_kernel{radpd::RadialKernel::geometric(s)};
  });
}

radpd_status radpd_kernel_tree_eigen(long q, double s, radpd_kernel** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new radpd_kernel{radpd::RadialKernel::tree_eigen(degree(q), s)};
  });
}

radpd_status radpd_kernel_table(const double* values, size_t count, double l0, double l1,
                                radpd_kernel** out) {
  return guarded([&] {
    require(out != nullptr && (values != nullptr || count == 0), "null argument");
    *out = new radpd_kernel{
        radpd::RadialKernel::table(std::vector<double>(values, values + count), l0, l1)};
  });
}

radpd_status radpd_kernel_combine(double a, const radpd_kernel* phi1, double b,
                                  const radpd_kernel* phi2, radpd_kernel** out) {
  return guarded([&] {
    require(phi1 != nullptr && phi2 != nullptr && out != nullptr, "null argument");
    *out = new radpd_kernel{radpd::positive_combination(a, phi1->phi, b, phi2->phi)};
  });
}

radpd_status radpd_kernel_eval(const radpd_kernel* phi, int n, double* out) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    *out = phi->phi(n);
  });
}

radpd_status radpd_kernel_to_json(const radpd_kernel* phi, char** out) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    *out = copy_string(radpd::kernel_to_json(phi->phi).dump());
  });
}

void radpd_kernel_free(radpd_kernel* phi) { delete phi; }

radpd_status radpd_operator_tree_b(const radpd_kernel* phi, long q, int M, radpd_operator** out) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    *out = new radpd_operator{radpd::build_tree_b(phi->phi, degree(q), M)};
  });
}

radpd_status radpd_operator_product_b(const radpd_kernel* phi, const long* qs, size_t dims,
                                      int M, radpd_operator** out) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    const auto list = degrees(qs, dims);
    *out = new radpd_operator{radpd::build_product_b(phi->phi, list, M)};
  });
}

radpd_status radpd_operator_smoothed(const radpd_kernel* phi, double r, int M,
                                     radpd_operator** out) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    *out = new radpd_operator{radpd::build_smoothed(phi->phi, r, M)};
  });
}

radpd_status radpd_operator_rows(const radpd_operator* op, size_t* out) {
  return guarded([&] {
    require(op != nullptr && out != nullptr, "null argument");
    *out = static_cast<size_t>(op->op.entries.rows());
  });
}

radpd_status radpd_operator_entry(const radpd_operator* op, size_t i, size_t j, double* out) {
  return guarded([&] {
    require(op != nullptr && out != nullptr, "null argument");
    const auto n = static_cast<size_t>(op->op.entries.rows());
    require(i < n && j < n, "operator index out of range");
    *out = op->op.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
}

radpd_status radpd_operator_tail(const radpd_operator* op, double* out) {
  return guarded([&] {
    require(op != nullptr && out != nullptr, "null argument");
    *out = op->op.tail_heuristic;
  });
}

radpd_status radpd_operator_to_csv(const radpd_operator* op, char** out) {
  return guarded([&] {
    require(op != nullptr && out != nullptr, "null argument");
    *out = copy_string(radpd::to_csv(op->op.entries));
  });
}

void radpd_operator_free(radpd_operator* op) { delete op; }

radpd_status radpd_check(const radpd_kernel* phi, const long* qs, size_t dims, int M, double tol,
                         radpd_report* out) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    const auto list = degrees(qs, dims);
    const auto report = radpd::check_positive_definite(phi->phi, list, M, check_options(tol));
    radpd_report r{};
    r.verdict = report.verdict == radpd::Verdict::member       ? RADPD_MEMBER
                : report.verdict == radpd::Verdict::non_member ? RADPD_NON_MEMBER
                                                               : RADPD_INCONCLUSIVE;
    r.min_eigenvalue = report.min_eigenvalue;
    r.trace = report.trace;
    r.trace_norm = report.trace_norm;
    r.spectral_norm = report.spectral_norm;
    r.l0 = report.limits.l0;
    r.l1 = report.limits.l1;
    r.tail_heuristic = report.tail_heuristic;
    r.limits_satisfied = report.limits_satisfied ? 1 : 0;
    r.truncation = report.truncation;
    r.has_witness = report.witness ? 1 : 0;
    r.witness_quadratic_form = report.witness ? report.witness->quadratic_form : 0.0;
    *out = r;
  });
}

radpd_status radpd_check_json(const radpd_kernel* phi, const long* qs, size_t dims, int M,
                              double tol, char** out) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    const auto list = degrees(qs, dims);
    const auto report = radpd::check_positive_definite(phi->phi, list, M, check_options(tol));
    *out = copy_string(radpd::report_to_json(report).dump());
  });
}

radpd_status radpd_cb_norm(const radpd_kernel* phi, const long* qs, size_t dims, int M,
                           double* out) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    const auto list = degrees(qs, dims);
    *out = radpd::cb_norm_estimate(phi->phi, list, M);
  });
}

radpd_status radpd_corollary5(long q, double eps, int M, radpd_smoothed_witness* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto w = radpd::corollary5_witness(q, eps, M);
    *out = radpd_smoothed_witness{w.in_rq ? 1 : 0, w.entry11, w.closed_form, w.agrees ? 1 : 0};
  });
}

radpd_status radpd_corollary6(long q, int M, radpd_product_witness* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto w = radpd::corollary6_witness(q, M);
    *out = radpd_product_witness{w.in_rq ? 1 : 0, w.quad_form, w.closed_form, w.table_form,
                                 w.agrees ? 1 : 0};
  });
}

radpd_status radpd_spectral_measure(const radpd_kernel* phi, const long* qs, size_t dims, int M,
                                    double tol, uint64_t seed, radpd_measure** out,
                                    radpd_moment_info* info) {
  return guarded([&] {
    require(phi != nullptr && out != nullptr, "null argument");
    const auto list = degrees(qs, dims);
    radpd::MomentOptions options;
    options.tol = tol;
    options.seed = seed;
    auto solution = radpd::spectral_measure_product(phi->phi, list, M, options);
    if (info != nullptr) {
      *info = radpd_moment_info{solution.rank, solution.symmetrization_defect,
                                solution.boundary_band_mass};
    }
    *out = new radpd_measure{std::move(solution.measure), std::move(solution.raw)};
  });
}

radpd_status radpd_measure_from_json(const char* json, radpd_measure** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw radpd::Error(radpd::ErrorCode::parse, std::string("invalid measure JSON: ") + e.what());
    }
    *out = new radpd_measure{radpd::measure_from_json(doc), std::nullopt};
  });
}

radpd_status radpd_measure_to_json(const radpd_measure* mu, char** out) {
  return guarded([&] {
    require(mu != nullptr && out != nullptr, "null argument");
    *out = copy_string(radpd::measure_to_json(mu->measure).dump());
  });
}

radpd_status radpd_measure_dims(const radpd_measure* mu, size_t* out) {
  return guarded([&] {
    require(mu != nullptr && out != nullptr, "null argument");
    *out = static_cast<size_t>(mu->measure.dims);
  });
}

radpd_status radpd_measure_atom_count(const radpd_measure* mu, size_t* out) {
  return guarded([&] {
    require(mu != nullptr && out != nullptr, "null argument");
    *out = mu->measure.atoms.size();
  });
}

radpd_status radpd_measure_atom(const radpd_measure* mu, size_t k, double* location,
                                double* weight) {
  return guarded([&] {
    require(mu != nullptr && location != nullptr && weight != nullptr, "null argument");
    require(k < mu->measure.atoms.size(), "atom index out of range");
    const auto& atom = mu->measure.atoms[k];
    std::copy(atom.location.begin(), atom.location.end(), location);
    *weight = atom.weight;
  });
}

radpd_status radpd_measure_boundary(const radpd_measure* mu, double* c_plus, double* c_minus) {
  return guarded([&] {
    require(mu != nullptr && c_plus != nullptr && c_minus != nullptr, "null argument");
    *c_plus = mu->measure.c_plus;
    *c_minus = mu->measure.c_minus;
  });
}

radpd_status radpd_measure_reconstruct(const radpd_measure* mu, const long* qs, const int* n,
                                       size_t dims, double* out) {
  return guarded([&] {
    require(mu != nullptr && n != nullptr && out != nullptr, "null argument");
    const auto list = degrees(qs, dims);
    *out = radpd::reconstruct(mu->measure, list, std::span<const int>(n, dims));
  });
}

radpd_status radpd_measure_q_moment_error(const radpd_measure* mu, const radpd_kernel* phi,
                                          long q, int n_max, double* out) {
  return guarded([&] {
    require(mu != nullptr && phi != nullptr && out != nullptr, "null argument");
    require(mu->raw.has_value(), "measure carries no raw spectral data");
    *out = radpd::verify_q_moments(phi->phi, *mu->raw, degree(q), n_max);
  });
}

void radpd_measure_free(radpd_measure* mu) { delete mu; }

radpd_status radpd_graph_from_spec(const char* spec, size_t cap, radpd_graph** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    *out = new radpd_graph{radpd::graph_from_spec(spec, cap == 0 ? radpd::kDefaultBallCap : cap)};
  });
}

radpd_status radpd_graph_from_edge_file(const char* path, radpd_graph** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new radpd_graph{radpd::read_edge_list_file(path)};
  });
}

radpd_status radpd_graph_from_edges(size_t vertices, const int* endpoints, size_t edge_count,
                                    radpd_graph** out) {
  return guarded([&] {
    require(out != nullptr && (endpoints != nullptr || edge_count == 0), "null argument");
    std::vector<std::pair<int, int>> edges;
    for (size_t e = 0; e < edge_count; ++e) edges.emplace_back(endpoints[2 * e], endpoints[2 * e + 1]);
    *out = new radpd_graph{radpd::graph_from_edges(vertices, std::move(edges))};
  });
}

radpd_status radpd_graph_vertex_count(const radpd_graph* g, size_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = g->g.n_vertices;
  });
}

radpd_status radpd_graph_distance(const radpd_graph* g, size_t x, size_t y, int* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    require(x < g->g.n_vertices && y < g->g.n_vertices, "vertex out of range");
    *out = g->g.distance(x, y);
  });
}

radpd_status radpd_graph_to_edge_list(const radpd_graph* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    std::ostringstream text;
    radpd::write_edge_list(text, g->g);
    *out = copy_string(text.str());
  });
}

radpd_status radpd_graph_gram_psd(const radpd_graph* g, const radpd_kernel* phi, double tol,
                                  int* psd, double* min_eigenvalue) {
  return guarded([&] {
    require(g != nullptr && phi != nullptr && psd != nullptr, "null argument");
    const auto result = radpd::gram_psd_check(g->g, phi->phi, tol);
    *psd = result.psd ? 1 : 0;
    if (min_eigenvalue != nullptr) *min_eigenvalue = result.min_eigenvalue;
  });
}

radpd_status radpd_graph_is_median(const radpd_graph* g, int* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = radpd::is_median(g->g) ? 1 : 0;
  });
}

radpd_status radpd_graph_hyperplane_count(const radpd_graph* g, int* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = radpd::hyperplane_decomposition(g->g).num_classes;
  });
}

radpd_status radpd_graph_sageev(const radpd_graph* g, int* discrepancy) {
  return guarded([&] {
    require(g != nullptr && discrepancy != nullptr, "null argument");
    *discrepancy = radpd::sageev_distance_check(g->g);
  });
}

radpd_status radpd_graph_conditionally_negative(const radpd_graph* g, double tol, int* holds,
                                                double* max_violation) {
  return guarded([&] {
    require(g != nullptr && holds != nullptr, "null argument");
    const auto result = radpd::conditionally_negative_check(g->g, tol);
    *holds = result.holds ? 1 : 0;
    if (max_violation != nullptr) *max_violation = result.max_violation;
  });
}

radpd_status radpd_graph_schoenberg(const radpd_graph* g, double s, double tol, int* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = radpd::schoenberg_check(g->g, s, tol) ? 1 : 0;
  });
}

radpd_status radpd_graph_median_kernel(const radpd_graph* g, const radpd_measure* mu, double tol,
                                       int* out) {
  return guarded([&] {
    require(g != nullptr && mu != nullptr && out != nullptr, "null argument");
    *out = radpd::median_kernel_check(g->g, mu->measure, tol) ? 1 : 0;
  });
}

void radpd_graph_free(radpd_graph* g) { delete g; }

}  // extern "C"

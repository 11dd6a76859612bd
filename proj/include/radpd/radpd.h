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

#ifndef RADPD_RADPD_H
#define RADPD_RADPD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RADPD_BUILDING_LIBRARY)
#define RADPD_API __declspec(dllexport)
#else
#define RADPD_API __declspec(dllimport)
#endif
#else
#define RADPD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum radpd_status {
  RADPD_OK = 0,
  RADPD_ERR_INVALID_ARGUMENT = 1,
  RADPD_ERR_PARSE = 2,
  RADPD_ERR_INSUFFICIENT_DATA = 3,
  RADPD_ERR_DIMENSION_TOO_LARGE = 4,
  RADPD_ERR_DIMENSION_MISMATCH = 5,
  RADPD_ERR_NOT_SYMMETRIC = 6,
  RADPD_ERR_NOT_POSITIVE = 7,
  RADPD_ERR_LIMITS_VIOLATED = 8,
  RADPD_ERR_JOINT_DIAGONALIZATION_FAILED = 9,
  RADPD_ERR_SPECTRUM_OUT_OF_RANGE = 10,
  RADPD_ERR_TOO_LARGE = 11,
  RADPD_ERR_NOT_MEDIAN = 12,
  RADPD_ERR_IO = 13,
  RADPD_ERR_INTERNAL = 99
} radpd_status;

/* Degree value standing for q = infinity. */
#define RADPD_Q_INFINITY 0L

typedef enum radpd_verdict {
  RADPD_MEMBER = 0,
  RADPD_NON_MEMBER = 1,
  RADPD_INCONCLUSIVE = 2
} radpd_verdict;

typedef struct radpd_kernel radpd_kernel;
typedef struct radpd_operator radpd_operator;
typedef struct radpd_measure radpd_measure;
typedef struct radpd_graph radpd_graph;

RADPD_API const char* radpd_version(void);
/* Message of the last failed call on this thread; never NULL. */
RADPD_API const char* radpd_last_error(void);
/* Symbolic name such as "InsufficientData". */
RADPD_API const char* radpd_status_name(radpd_status status);
/* Frees strings returned through char** out-parameters. */
RADPD_API void radpd_string_free(char* text);

/* ---- polynomials ---- */

RADPD_API radpd_status radpd_eval_P(long q, int n, double x, double* out);
RADPD_API radpd_status radpd_eval_Q(long q, int n, double x, double* out);

/* ---- kernels ---- */

RADPD_API radpd_status radpd_kernel_from_json(const char* json, radpd_kernel** out);
RADPD_API radpd_status radpd_kernel_geometric(double s, radpd_kernel** out);
RADPD_API radpd_status radpd_kernel_tree_eigen(long q, double s, radpd_kernel** out);
RADPD_API radpd_status radpd_kernel_table(const double* values, size_t count, double l0,
                                          double l1, radpd_kernel** out);
/* a * phi1 + b * phi2 with a, b > 0. */
RADPD_API radpd_status radpd_kernel_combine(double a, const radpd_kernel* phi1, double b,
                                            const radpd_kernel* phi2, radpd_kernel** out);
RADPD_API radpd_status radpd_kernel_eval(const radpd_kernel* phi, int n, double* out);
RADPD_API radpd_status radpd_kernel_to_json(const radpd_kernel* phi, char** out);
RADPD_API void radpd_kernel_free(radpd_kernel* phi);

/* ---- truncated operators ---- */

/* Hankel operator when q == RADPD_Q_INFINITY. */
RADPD_API radpd_status radpd_operator_tree_b(const radpd_kernel* phi, long q, int M,
                                             radpd_operator** out);
RADPD_API radpd_status radpd_operator_product_b(const radpd_kernel* phi, const long* qs,
                                                size_t dims, int M, radpd_operator** out);
RADPD_API radpd_status radpd_operator_smoothed(const radpd_kernel* phi, double r, int M,
                                               radpd_operator** out);
RADPD_API radpd_status radpd_operator_rows(const radpd_operator* op, size_t* out);
RADPD_API radpd_status radpd_operator_entry(const radpd_operator* op, size_t i, size_t j,
                                            double* out);
RADPD_API radpd_status radpd_operator_tail(const radpd_operator* op, double* out);
RADPD_API radpd_status radpd_operator_to_csv(const radpd_operator* op, char** out);
RADPD_API void radpd_operator_free(radpd_operator* op);

/* ---- membership ---- */

typedef struct radpd_report {
  radpd_verdict verdict;
  double min_eigenvalue;
  double trace;
  double trace_norm;
  double spectral_norm;
  double l0;
  double l1;
  double tail_heuristic;
  int limits_satisfied;
  int truncation;
  int has_witness;
  double witness_quadratic_form;
} radpd_report;

RADPD_API radpd_status radpd_check(const radpd_kernel* phi, const long* qs, size_t dims, int M,
                                   double tol, radpd_report* out);
RADPD_API radpd_status radpd_check_json(const radpd_kernel* phi, const long* qs, size_t dims,
                                        int M, double tol, char** out);
RADPD_API radpd_status radpd_cb_norm(const radpd_kernel* phi, const long* qs, size_t dims,
                                     int M, double* out);

typedef struct radpd_smoothed_witness {
  int in_rq;
  double entry11;
  double closed_form;
  int agrees;
} radpd_smoothed_witness;

typedef struct radpd_product_witness {
  int in_rq;
  double quad_form;
  double closed_form; /* -2 (1 + 1/q)^2 / q */
  double table_form;  /* -2 / q */
  int agrees;
} radpd_product_witness;

RADPD_API radpd_status radpd_corollary5(long q, double eps, int M, radpd_smoothed_witness* out);
RADPD_API radpd_status radpd_corollary6(long q, int M, radpd_product_witness* out);

/* ---- measures ---- */

typedef struct radpd_moment_info {
  int rank;
  double symmetrization_defect;
  double boundary_band_mass;
} radpd_moment_info;

/* Representing measure of phi on the tree (dims == 1) or product space.
   info may be NULL. */
RADPD_API radpd_status radpd_spectral_measure(const radpd_kernel* phi, const long* qs,
                                              size_t dims, int M, double tol, uint64_t seed,
                                              radpd_measure** out, radpd_moment_info* info);
RADPD_API radpd_status radpd_measure_from_json(const char* json, radpd_measure** out);
RADPD_API radpd_status radpd_measure_to_json(const radpd_measure* mu, char** out);
RADPD_API radpd_status radpd_measure_dims(const radpd_measure* mu, size_t* out);
RADPD_API radpd_status radpd_measure_atom_count(const radpd_measure* mu, size_t* out);
/* location must hold dims values. */
RADPD_API radpd_status radpd_measure_atom(const radpd_measure* mu, size_t k, double* location,
                                          double* weight);
RADPD_API radpd_status radpd_measure_boundary(const radpd_measure* mu, double* c_plus,
                                              double* c_minus);
RADPD_API radpd_status radpd_measure_reconstruct(const radpd_measure* mu, const long* qs,
                                                 const int* n, size_t dims, double* out);
/* Needs a measure produced by radpd_spectral_measure on a single tree. */
RADPD_API radpd_status radpd_measure_q_moment_error(const radpd_measure* mu,
                                                    const radpd_kernel* phi, long q, int n_max,
                                                    double* out);
RADPD_API void radpd_measure_free(radpd_measure* mu);

/* ---- graphs ---- */

/* cap == 0 selects the default vertex cap. */
RADPD_API radpd_status radpd_graph_from_spec(const char* spec, size_t cap, radpd_graph** out);
RADPD_API radpd_status radpd_graph_from_edge_file(const char* path, radpd_graph** out);
/* endpoints holds 2 * edge_count vertex ids. */
RADPD_API radpd_status radpd_graph_from_edges(size_t vertices, const int* endpoints,
                                              size_t edge_count, radpd_graph** out);
RADPD_API radpd_status radpd_graph_vertex_count(const radpd_graph* g, size_t* out);
RADPD_API radpd_status radpd_graph_distance(const radpd_graph* g, size_t x, size_t y, int* out);
RADPD_API radpd_status radpd_graph_to_edge_list(const radpd_graph* g, char** out);
RADPD_API radpd_status radpd_graph_gram_psd(const radpd_graph* g, const radpd_kernel* phi,
                                            double tol, int* psd, double* min_eigenvalue);
RADPD_API radpd_status radpd_graph_is_median(const radpd_graph* g, int* out);
RADPD_API radpd_status radpd_graph_hyperplane_count(const radpd_graph* g, int* out);
RADPD_API radpd_status radpd_graph_sageev(const radpd_graph* g, int* discrepancy);
RADPD_API radpd_status radpd_graph_conditionally_negative(const radpd_graph* g, double tol,
                                                          int* holds, double* max_violation);
RADPD_API radpd_status radpd_graph_schoenberg(const radpd_graph* g, double s, double tol,
                                              int* out);
RADPD_API radpd_status radpd_graph_median_kernel(const radpd_graph* g, const radpd_measure* mu,
                                                 double tol, int* out);
RADPD_API void radpd_graph_free(radpd_graph* g);

#ifdef __cplusplus
}
#endif

#endif /* RADPD_RADPD_H */

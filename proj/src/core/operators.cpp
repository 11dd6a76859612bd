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

#include "core/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "core/error.hpp"

namespace radpd {

const char* to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::hankel: return "H";
    case OperatorKind::tree_b: return "B_tree";
    case OperatorKind::product_b: return "B_product";
    case OperatorKind::multiradial_t: return "T";
    case OperatorKind::t_prime: return "T_prime";
    case OperatorKind::smoothed: return "A_smoothed";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kSaturated = static_cast<std::size_t>(-1);

std::size_t checked_power(int base, int exponent) {
  std::size_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > kSaturated / static_cast<std::size_t>(base)) return kSaturated;
    out *= static_cast<std::size_t>(base);
  }
  return out;
}

void require_truncation(int M) {
  if (M < 1) throw Error(ErrorCode::invalid_argument, "truncation M must be positive");
}

// Number of further diagonal entries used for the tail heuristic of closed
// forms (tables are limited by their length).
constexpr int kTailFactor = 4;

// Upper bound on the memo table of the product recurrence.
constexpr std::size_t kProductMemoBudget = 4'000'000;

// Tree-type sections B_{i,j} = d(i+j) + r B_{i-1,j-1}, d(m) = phi(m) - phi(m+2),
// which is the nested form of sum_k r^k d(i+j-2k).
TruncatedOperator build_weighted_section(const RadialKernel& phi, double r, int M,
                                         OperatorKind kind) {
  require_truncation(M);
  if (!phi.evaluable_upto(2 * M)) {
    throw Error(ErrorCode::insufficient_data,
                std::string(to_string(kind)) + " with M = " + std::to_string(M) +
                    " needs phi(0.." + std::to_string(2 * M) + ")");
  }
  int last_diag = kTailFactor * M - 1;
  if (const auto n_max = phi.max_index()) last_diag = std::min(last_diag, *n_max / 2 - 1);
  last_diag = std::max(last_diag, M - 1);
  const auto values = phi.values(2 * last_diag + 2);
  std::vector<double> d(values.size() - 2);
  for (std::size_t m = 0; m < d.size(); ++m) d[m] = values[m] - values[m + 2];

  TruncatedOperator out{kind, M, 1, Eigen::MatrixXd::Zero(M, M), 0.0};
  auto& B = out.entries;
  for (int i = 0; i < M; ++i) {
    for (int j = i; j < M; ++j) {
      B(i, j) = i == 0 ? d[j] : d[i + j] + r * B(i - 1, j - 1);
      B(j, i) = B(i, j);
    }
  }
  double diag = B(M - 1, M - 1);
  for (int i = M; i <= last_diag; ++i) {
    diag = d[2 * i] + r * diag;
    out.tail_heuristic += std::abs(diag);
  }
  return out;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

BoxIndex::BoxIndex(int dims, int side) : dims_(dims), side_(side) {
  if (dims < 1 || side < 1) {
    throw Error(ErrorCode::invalid_argument, "box dimensions must be positive");
  }
  size_ = checked_power(side, dims);
}

std::size_t BoxIndex::flatten(std::span<const int> multi) const {
  if (static_cast<int>(multi.size()) != dims_) {
    throw Error(ErrorCode::dimension_mismatch, "multi-index has the wrong length");
  }
  std::size_t flat = 0;
  for (int c : multi) {
    if (c < 0 || c >= side_) throw Error(ErrorCode::invalid_argument, "multi-index outside box");
    flat = flat * static_cast<std::size_t>(side_) + static_cast<std::size_t>(c);
  }
  return flat;
}

std::vector<int> BoxIndex::unflatten(std::size_t flat) const {
  std::vector<int> multi(static_cast<std::size_t>(dims_));
  for (int i = dims_ - 1; i >= 0; --i) {
    multi[i] = static_cast<int>(flat % static_cast<std::size_t>(side_));
    flat /= static_cast<std::size_t>(side_);
  }
  return multi;
}

TruncatedOperator build_hankel(const RadialKernel& phi, int M) {
  return build_weighted_section(phi, 0.0, M, OperatorKind::hankel);
}

TruncatedOperator build_tree_b(const RadialKernel& phi, ExtendedDegree q, int M) {
  return build_weighted_section(phi, q.inv_q(), M, OperatorKind::tree_b);
}

TruncatedOperator build_smoothed(const RadialKernel& phi, double r, int M) {
  if (!(r >= 1.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::invalid_argument, "smoothing parameter r must be >= 1");
  }
  return build_weighted_section(phi, 1.0 / r, M, OperatorKind::smoothed);
}

TruncatedOperator build_product_b(const RadialKernel& phi, std::span<const ExtendedDegree> qs,
                                  int M, std::size_t max_rows) {
  require_truncation(M);
  const int N = static_cast<int>(qs.size());
  if (N < 1) throw Error(ErrorCode::invalid_argument, "product needs at least one factor");
  const BoxIndex box(N, M);
  if (box.size() > max_rows) {
    throw Error(ErrorCode::dimension_too_large,
                "product box has " + std::to_string(M) + "^" + std::to_string(N) +
                    " rows, above the cap of " + std::to_string(max_rows));
  }
  if (!phi.evaluable_upto(2 * N * M)) {
    throw Error(ErrorCode::insufficient_data,
                "B_product needs phi(0.." + std::to_string(2 * N * M) + ")");
  }

  // Extended side for the tail heuristic.
  int side = M;
  for (int candidate = 2 * M; candidate > M; --candidate) {
    const std::size_t rows = checked_power(candidate, N);
    const std::size_t span = static_cast<std::size_t>(2 * N * (candidate - 1) + 1);
    if (rows != kSaturated && rows * span <= kProductMemoBudget &&
        phi.evaluable_upto(2 * N * candidate)) {
      side = candidate;
      break;
    }
  }
  const BoxIndex ext(N, side);
  const int S = 2 * N * (side - 1) + 1;
  const auto values = phi.values(2 * N * side);

  // D(t) = sum_k C(N,k) (-1)^k phi(t + 2k).
  std::vector<double> D(static_cast<std::size_t>(S), 0.0);
  for (int t = 0; t < S; ++t) {
    double acc = 0.0;
    for (int k = 0; k <= N; ++k) {
      const double c = (k % 2 == 0 ? 1.0 : -1.0) * binomial(N, k);
      acc += c * values[t + 2 * k];
    }
    D[t] = acc;
  }

  // F(w, s) = sum_{l <= w} prod_i r_i^{l_i} D(s - 2|l|), built in lexicographic
  // order of w through F(w, s) = F(w with w_i = 0, s) + r_i F(w - e_i, s - 2)
  // for the first i with w_i > 0.
  std::vector<std::size_t> stride(static_cast<std::size_t>(N));
  for (int i = N - 1, acc = 1; i >= 0; --i) {
    stride[i] = static_cast<std::size_t>(acc);
    acc *= side;
  }
  std::vector<double> F(ext.size() * static_cast<std::size_t>(S), 0.0);
  for (std::size_t w = 0; w < ext.size(); ++w) {
    const auto multi = ext.unflatten(w);
    const int norm = std::accumulate(multi.begin(), multi.end(), 0);
    double* row = &F[w * S];
    int first = 0;
    while (first < N && multi[first] == 0) ++first;
    if (first == N) {
      for (int s = 0; s < S; ++s) row[s] = D[s];
      continue;
    }
    const double r = qs[first].inv_q();
    const double* without = &F[(w - multi[first] * stride[first]) * S];
    const double* shifted = &F[(w - stride[first]) * S];
    for (int s = 2 * norm; s < S; ++s) row[s] = without[s] + r * shifted[s - 2];
  }

  TruncatedOperator out{OperatorKind::product_b, M, N,
                        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(box.size()),
                                              static_cast<Eigen::Index>(box.size())),
                        0.0};
  std::vector<std::vector<int>> multis(box.size());
  for (std::size_t a = 0; a < box.size(); ++a) multis[a] = box.unflatten(a);
  std::vector<int> meet(static_cast<std::size_t>(N));
  for (std::size_t a = 0; a < box.size(); ++a) {
    for (std::size_t b = a; b < box.size(); ++b) {
      int s = 0;
      for (int i = 0; i < N; ++i) {
        meet[i] = std::min(multis[a][i], multis[b][i]);
        s += multis[a][i] + multis[b][i];
      }
      const double value = F[ext.flatten(meet) * S + s];
      out.entries(a, b) = value;
      out.entries(b, a) = value;
    }
  }
  for (std::size_t w = 0; w < ext.size(); ++w) {
    const auto multi = ext.unflatten(w);
    if (std::all_of(multi.begin(), multi.end(), [M](int c) { return c < M; })) continue;
    const int norm = std::accumulate(multi.begin(), multi.end(), 0);
    out.tail_heuristic += std::abs(F[w * S + 2 * norm]);
  }
  return out;
}

MultiRadialFunction radial_as_multiradial(RadialKernel phi) {
  return [phi = std::move(phi)](std::span<const int> n) {
    return phi(std::accumulate(n.begin(), n.end(), 0));
  };
}

TruncatedOperator build_multiradial_t(const MultiRadialFunction& phi, int N, int M,
                                      std::size_t max_rows) {
  require_truncation(M);
  if (N < 1) throw Error(ErrorCode::invalid_argument, "dimension N must be positive");
  const BoxIndex box(N, M);
  if (box.size() > max_rows) {
    throw Error(ErrorCode::dimension_too_large, "multi-radial box exceeds the row cap");
  }
  const auto rows = static_cast<Eigen::Index>(box.size());
  TruncatedOperator out{OperatorKind::multiradial_t, M, N, Eigen::MatrixXd::Zero(rows, rows),
                        0.0};
  std::vector<std::vector<int>> multis(box.size());
  for (std::size_t a = 0; a < box.size(); ++a) multis[a] = box.unflatten(a);
  std::vector<int> arg(static_cast<std::size_t>(N));
  const unsigned subsets = 1u << N;
  for (std::size_t a = 0; a < box.size(); ++a) {
    for (std::size_t b = 0; b < box.size(); ++b) {
      double acc = 0.0;
      for (unsigned I = 0; I < subsets; ++I) {
        for (int i = 0; i < N; ++i) {
          arg[i] = multis[a][i] + multis[b][i] + ((I >> i) & 1u ? 2 : 0);
        }
        const double sign = std::popcount(I) % 2 == 0 ? 1.0 : -1.0;
        acc += sign * phi(arg);
      }
      out.entries(a, b) = acc;
    }
  }
  return out;
}

TruncatedOperator apply_smoothing_product(const TruncatedOperator& T,
                                          std::span<const ExtendedDegree> qs) {
  if (T.kind != OperatorKind::multiradial_t || static_cast<int>(qs.size()) != T.dims) {
    throw Error(ErrorCode::dimension_mismatch,
                "smoothing needs a T operator with one degree per coordinate");
  }
  const int N = T.dims;
  const int M = T.truncation;
  const BoxIndex box(N, M);
  TruncatedOperator out{OperatorKind::t_prime, M, N, T.entries, 0.0};
  auto& U = out.entries;
  std::vector<std::vector<int>> multis(box.size());
  for (std::size_t a = 0; a < box.size(); ++a) multis[a] = box.unflatten(a);
  double alpha = 1.0;
  for (int i = 0; i < N; ++i) {
    // (I - tau_i/q_i)^{-1}: U(m, n) += r_i U(m - e_i, n - e_i), lexicographic order.
    const double r = qs[i].inv_q();
    alpha *= qs[i].minus();
    std::size_t stride = 1;
    for (int k = i + 1; k < N; ++k) stride *= static_cast<std::size_t>(M);
    if (r == 0.0) continue;
    for (std::size_t a = 0; a < box.size(); ++a) {
      if (multis[a][i] == 0) continue;
      for (std::size_t b = 0; b < box.size(); ++b) {
        if (multis[b][i] == 0) continue;
        U(a, b) += r * U(a - stride, b - stride);
      }
    }
  }
  U *= alpha;
  return out;
}

std::string to_csv(const Eigen::MatrixXd& matrix) {
  std::string out;
  char buffer[32];
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out += ',';
      std::snprintf(buffer, sizeof buffer, "%.17g", matrix(i, j));
      out += buffer;
    }
    out += '\n';
  }
  return out;
}

}  // namespace radpd

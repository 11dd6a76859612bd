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

#ifndef RADPD_CORE_GRAPHS_HPP
#define RADPD_CORE_GRAPHS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "core/kernel.hpp"
#include "core/moments.hpp"

namespace radpd {

inline constexpr std::size_t kDefaultBallCap = 5000;
inline constexpr std::size_t kDefaultMedianCap = 300;

/// Finite connected graph with its full shortest-path distance table.
struct GraphBall {
  std::size_t n_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adjacency;
  std::vector<std::uint16_t> dist;  // row-major n x n
  std::string descriptor;

  int distance(std::size_t x, std::size_t y) const { return dist[x * n_vertices + y]; }
  int diameter() const;
};

/// Builds adjacency and BFS distances. Throws ErrorCode::invalid_argument on
/// a disconnected graph or an out-of-range endpoint.
GraphBall graph_from_edges(std::size_t n, std::vector<std::pair<int, int>> edges,
                           std::string descriptor = "graph");

/// Rooted ball of radius R in the (q+1)-regular tree.
GraphBall tree_ball(long q, int R, std::size_t cap = kDefaultBallCap);
/// Cartesian product; distances are coordinate sums.
GraphBall product_ball(std::span<const GraphBall> factors, std::size_t cap = kDefaultBallCap);

GraphBall path_graph(int n);
GraphBall cycle_graph(int n);
GraphBall grid_graph(int a, int b);
GraphBall hypercube_graph(int d);
GraphBall petersen_graph();
GraphBall complete_bipartite_graph(int a, int b);

/// "tree:q:R", "path:n", "cycle:n", "grid:AxB", "cube:d", "petersen",
/// "kbip:a,b", or factors joined by '*'.
GraphBall graph_from_spec(const std::string& spec, std::size_t cap = kDefaultBallCap);

/// Text format: optional "vertices N" line, then one "u v" pair per line.
/// '#' starts a comment.
GraphBall read_edge_list(std::istream& in);
GraphBall read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const GraphBall& g);

Eigen::MatrixXd gram_matrix(const GraphBall& g, const RadialKernel& phi);

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

/// min eigenvalue of [phi(d(x, y))] against -tol * max(1, ||G||).
PsdResult gram_psd_check(const GraphBall& g, const RadialKernel& phi, double tol);

/// Every triple has exactly one median. Throws ErrorCode::too_large past cap.
bool is_median(const GraphBall& g, std::size_t cap = kDefaultMedianCap);

struct HyperplaneDecomposition {
  int num_classes = 0;
  std::vector<int> edge_class;  // parallel to GraphBall::edges
  int base = 0;
  /// Bitset over classes for each vertex: hyperplanes separating it from base.
  std::vector<std::vector<std::uint64_t>> signatures;
};

/// Edge classes under the square relation. With validate set, throws
/// ErrorCode::not_median when g fails is_median.
HyperplaneDecomposition hyperplane_decomposition(const GraphBall& g, bool validate = false);

/// max over pairs of | |S_x xor S_y| - d(x, y) |.
int sageev_distance_check(const GraphBall& g);

struct NegativityResult {
  bool holds = false;
  double max_violation = 0.0;
};

/// Largest eigenvalue of P D P with P the projection off the constants.
NegativityResult conditionally_negative_check(const GraphBall& g, double tol);

/// Gram matrix s^d(x, y) is PSD within tol, with 0^0 = 1.
bool schoenberg_check(const GraphBall& g, double s, double tol);

/// phi(n) = c_+ + (-1)^n c_- + sum_k w_k s_k^n is PSD on g within tol.
bool median_kernel_check(const GraphBall& g, const DiscreteMeasure& measure, double tol);

}  // namespace radpd

#endif  // RADPD_CORE_GRAPHS_HPP

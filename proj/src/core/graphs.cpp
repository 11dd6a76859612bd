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

#include "core/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "core/error.hpp"

namespace radpd {

namespace {

constexpr int kUnreached = std::numeric_limits<std::uint16_t>::max();

std::vector<std::uint16_t> bfs_distances(const std::vector<std::vector<int>>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<std::uint16_t> dist(n * n, static_cast<std::uint16_t>(kUnreached));
  std::vector<int> queue(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::uint16_t* row = dist.data() + s * n;
    std::size_t head = 0, tail = 0;
    queue[tail++] = static_cast<int>(s);
    row[s] = 0;
    while (head < tail) {
      const int v = queue[head++];
      if (row[v] + 1 >= kUnreached) throw Error(ErrorCode::too_large, "graph diameter too large");
      for (int w : adjacency[v]) {
        if (row[w] == kUnreached) {
          row[w] = static_cast<std::uint16_t>(row[v] + 1);
          queue[tail++] = w;
        }
      }
    }
    if (tail != n) throw Error(ErrorCode::invalid_argument, "graph is not connected");
  }
  return dist;
}

std::vector<std::vector<int>> build_adjacency(std::size_t n,
                                              const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& [u, v] : edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  return adjacency;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A) {
  if (A.rows() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

PsdResult psd_of(const Eigen::MatrixXd& G, double tol) {
  const Eigen::VectorXd eig = symmetric_eigenvalues(G);
  PsdResult result;
  if (eig.size() == 0) {
    result.psd = true;
    return result;
  }
  result.min_eigenvalue = eig.minCoeff();
  const double norm = eig.cwiseAbs().maxCoeff();
  result.psd = result.min_eigenvalue >= -tol * std::max(1.0, norm);
  return result;
}

Eigen::MatrixXd gram_from_values(const GraphBall& g, const std::vector<double>& values) {
  const auto n = static_cast<Eigen::Index>(g.n_vertices);
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) G(x, y) = values[g.distance(x, y)];
  }
  return G;
}

int parse_int(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::parse, "bad integer '" + text + "' in graph spec '" + spec + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

GraphBall factor_from_spec(const std::string& spec, std::size_t cap) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts.empty() ? spec : parts[0];
  auto arity = [&](std::size_t k) {
    if (parts.size() != k + 1) {
      throw Error(ErrorCode::parse, "graph spec '" + spec + "' has the wrong number of fields");
    }
  };
  if (kind == "tree") {
    arity(2);
    return tree_ball(parse_int(parts[1], spec), parse_int(parts[2], spec), cap);
  }
  if (kind == "path") {
    arity(1);
    return path_graph(parse_int(parts[1], spec));
  }
  if (kind == "cycle") {
    arity(1);
    return cycle_graph(parse_int(parts[1], spec));
  }
  if (kind == "grid") {
    arity(1);
    const auto sides = split(parts[1], 'x');
    if (sides.size() != 2) throw Error(ErrorCode::parse, "grid spec needs AxB: " + spec);
    return grid_graph(parse_int(sides[0], spec), parse_int(sides[1], spec));
  }
  if (kind == "cube") {
    arity(1);
    return hypercube_graph(parse_int(parts[1], spec));
  }
  if (kind == "petersen") {
    arity(0);
    return petersen_graph();
  }
  if (kind == "kbip") {
    arity(1);
    const auto sides = split(parts[1], ',');
    if (sides.size() != 2) throw Error(ErrorCode::parse, "kbip spec needs a,b: " + spec);
    return complete_bipartite_graph(parse_int(sides[0], spec), parse_int(sides[1], spec));
  }
  throw Error(ErrorCode::parse, "unknown graph spec '" + spec + "'");
}

}  // namespace

int GraphBall::diameter() const {
  if (dist.empty()) return 0;
  return *std::max_element(dist.begin(), dist.end());
}

GraphBall graph_from_edges(std::size_t n, std::vector<std::pair<int, int>> edges,
                           std::string descriptor) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
    }
    if (u == v) throw Error(ErrorCode::invalid_argument, "self-loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  GraphBall g;
  g.n_vertices = n;
  g.adjacency = build_adjacency(n, edges);
  g.edges = std::move(edges);
  g.dist = bfs_distances(g.adjacency);
  g.descriptor = std::move(descriptor);
  return g;
}

GraphBall tree_ball(long q, int R, std::size_t cap) {
  if (q < 2) throw Error(ErrorCode::invalid_argument, "tree degree q must be at least 2");
  if (R < 0) throw Error(ErrorCode::invalid_argument, "radius must be non-negative");
  double count = 1.0, level = 1.0;
  for (int r = 1; r <= R; ++r) {
    level *= (r == 1 ? static_cast<double>(q + 1) : static_cast<double>(q));
    count += level;
    if (count > static_cast<double>(cap)) {
      throw Error(ErrorCode::too_large, "tree ball tree:" + std::to_string(q) + ":" +
                                            std::to_string(R) + " exceeds the vertex cap " +
                                            std::to_string(cap));
    }
  }
  std::vector<std::pair<int, int>> edges;
  std::vector<int> frontier{0};
  int next = 1;
  for (int r = 1; r <= R; ++r) {
    std::vector<int> grown;
    for (int v : frontier) {
      const long children = (r == 1) ? q + 1 : q;
      for (long c = 0; c < children; ++c) {
        edges.emplace_back(v, next);
        grown.push_back(next++);
      }
    }
    frontier = std::move(grown);
  }
  return graph_from_edges(static_cast<std::size_t>(next), std::move(edges),
                          "tree:" + std::to_string(q) + ":" + std::to_string(R));
}

GraphBall product_ball(std::span<const GraphBall> factors, std::size_t cap) {
  if (factors.empty()) throw Error(ErrorCode::invalid_argument, "product needs factors");
  double count = 1.0;
  for (const auto& f : factors) count *= static_cast<double>(f.n_vertices);
  if (count > static_cast<double>(cap)) {
    throw Error(ErrorCode::too_large, "product graph exceeds the vertex cap " + std::to_string(cap));
  }
  const std::size_t k = factors.size();
  const auto n = static_cast<std::size_t>(count);
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k - 1; i > 0; --i) stride[i - 1] = stride[i] * factors[i].n_vertices;

  std::vector<std::size_t> coord(k);
  auto decode = [&](std::size_t v) {
    for (std::size_t i = 0; i < k; ++i) coord[i] = (v / stride[i]) % factors[i].n_vertices;
  };
  GraphBall g;
  g.n_vertices = n;
  for (std::size_t v = 0; v < n; ++v) {
    decode(v);
    for (std::size_t i = 0; i < k; ++i) {
      for (int w : factors[i].adjacency[coord[i]]) {
        if (static_cast<std::size_t>(w) <= coord[i]) continue;
        const std::size_t u = v + (static_cast<std::size_t>(w) - coord[i]) * stride[i];
        g.edges.emplace_back(static_cast<int>(v), static_cast<int>(u));
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.adjacency = build_adjacency(n, g.edges);

  g.dist.assign(n * n, 0);
  std::vector<std::size_t> other(k);
  for (std::size_t x = 0; x < n; ++x) {
    decode(x);
    other = coord;
    for (std::size_t y = 0; y < n; ++y) {
      int d = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t yi = (y / stride[i]) % factors[i].n_vertices;
        d += factors[i].distance(other[i], yi);
      }
      if (d >= kUnreached) throw Error(ErrorCode::too_large, "graph diameter too large");
      g.dist[x * n + y] = static_cast<std::uint16_t>(d);
    }
  }
  g.descriptor.clear();
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0) g.descriptor += "*";
    g.descriptor += factors[i].descriptor;
  }
  return g;
}

GraphBall path_graph(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "path needs at least one vertex");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return graph_from_edges(n, std::move(edges), "path:" + std::to_string(n));
}

GraphBall cycle_graph(int n) {
  if (n < 3) throw Error(ErrorCode::invalid_argument, "cycle needs at least three vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return graph_from_edges(n, std::move(edges), "cycle:" + std::to_string(n));
}

GraphBall grid_graph(int a, int b) {
  const GraphBall factors[] = {path_graph(a), path_graph(b)};
  GraphBall g = product_ball(factors, static_cast<std::size_t>(a) * static_cast<std::size_t>(b));
  g.descriptor = "grid:" + std::to_string(a) + "x" + std::to_string(b);
  return g;
}

GraphBall hypercube_graph(int d) {
  if (d < 0 || d > 12) throw Error(ErrorCode::invalid_argument, "cube dimension must be 0..12");
  const int n = 1 << d;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < d; ++i) {
      const int w = v ^ (1 << i);
      if (v < w) edges.emplace_back(v, w);
    }
  }
  return graph_from_edges(n, std::move(edges), "cube:" + std::to_string(d));
}

GraphBall petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return graph_from_edges(10, std::move(edges), "petersen");
}

GraphBall complete_bipartite_graph(int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::invalid_argument, "both sides need a vertex");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
  }
  return graph_from_edges(static_cast<std::size_t>(a + b), std::move(edges),
                          "kbip:" + std::to_string(a) + "," + std::to_string(b));
}

GraphBall graph_from_spec(const std::string& spec, std::size_t cap) {
  const auto parts = split(spec, '*');
  if (parts.size() == 1) return factor_from_spec(parts[0], cap);
  std::vector<GraphBall> factors;
  for (const auto& part : parts) factors.push_back(factor_from_spec(part, cap));
  return product_ball(factors, cap);
}

GraphBall read_edge_list(std::istream& in) {
  std::size_t declared = 0;
  int largest = -1;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "vertices") {
      long n = 0;
      if (!(fields >> n) || n < 1) {
        throw Error(ErrorCode::parse, "bad vertex count on line " + std::to_string(line_number));
      }
      declared = static_cast<std::size_t>(n);
      continue;
    }
    int u = 0, v = 0;
    std::istringstream pair(line);
    std::string rest;
    if (!(pair >> u >> v) || (pair >> rest) || u < 0 || v < 0) {
      throw Error(ErrorCode::parse, "bad edge on line " + std::to_string(line_number));
    }
    edges.emplace_back(u, v);
    largest = std::max({largest, u, v});
  }
  const std::size_t n = std::max(declared, static_cast<std::size_t>(largest + 1));
  return graph_from_edges(n, std::move(edges), "edges");
}

GraphBall read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const GraphBall& g) {
  out << "# " << g.descriptor << "\n";
  out << "vertices " << g.n_vertices << "\n";
  for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
}

Eigen::MatrixXd gram_matrix(const GraphBall& g, const RadialKernel& phi) {
  return gram_from_values(g, phi.values(g.diameter()));
}

PsdResult gram_psd_check(const GraphBall& g, const RadialKernel& phi, double tol) {
  return psd_of(gram_matrix(g, phi), tol);
}

bool is_median(const GraphBall& g, std::size_t cap) {
  const std::size_t n = g.n_vertices;
  if (n > cap) {
    throw Error(ErrorCode::too_large,
                "median test limited to " + std::to_string(cap) + " vertices");
  }
  std::vector<int> interval;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      interval.clear();
      const int dxy = g.distance(x, y);
      for (std::size_t u = 0; u < n; ++u) {
        if (g.distance(x, u) + g.distance(u, y) == dxy) interval.push_back(static_cast<int>(u));
      }
      for (std::size_t z = y + 1; z < n; ++z) {
        const int dyz = g.distance(y, z);
        const int dzx = g.distance(z, x);
        int medians = 0;
        for (int u : interval) {
          if (g.distance(y, u) + g.distance(u, z) == dyz &&
              g.distance(z, u) + g.distance(u, x) == dzx) {
            if (++medians > 1) break;
          }
        }
        if (medians != 1) return false;
      }
    }
  }
  return true;
}

HyperplaneDecomposition hyperplane_decomposition(const GraphBall& g, bool validate) {
  if (validate && !is_median(g, std::max(kDefaultMedianCap, g.n_vertices))) {
    throw Error(ErrorCode::not_median, "graph '" + g.descriptor + "' is not median");
  }
  const std::size_t n = g.n_vertices;
  std::unordered_map<std::uint64_t, int> edge_id;
  auto key = [n](int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<std::uint64_t>(u) * n + static_cast<std::uint64_t>(v);
  };
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    edge_id.emplace(key(g.edges[e].first, g.edges[e].second), static_cast<int>(e));
  }
  std::vector<int> parent(g.edges.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int e) {
    while (parent[e] != e) e = parent[e] = parent[parent[e]];
    return e;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  // Square a-b-d-c: {a,b} ~ {c,d} and {a,c} ~ {b,d}.
  for (std::size_t a = 0; a < n; ++a) {
    const auto& nb = g.adjacency[a];
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const int b = nb[i], c = nb[j];
        for (int d : g.adjacency[b]) {
          if (d == static_cast<int>(a) || g.distance(c, d) != 1) continue;
          const int ab = edge_id.at(key(static_cast<int>(a), b));
          const int ac = edge_id.at(key(static_cast<int>(a), c));
          unite(ab, edge_id.at(key(c, d)));
          unite(ac, edge_id.at(key(b, d)));
        }
      }
    }
  }

  HyperplaneDecomposition result;
  result.edge_class.resize(g.edges.size());
  std::unordered_map<int, int> label;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [it, inserted] = label.emplace(find(static_cast<int>(e)), result.num_classes);
    if (inserted) ++result.num_classes;
    result.edge_class[e] = it->second;
  }

  const std::size_t words = (static_cast<std::size_t>(result.num_classes) + 63) / 64;
  result.signatures.assign(n, std::vector<std::uint64_t>(words, 0));
  std::vector<char> seen(n, 0);
  std::deque<int> queue{result.base};
  seen[result.base] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.adjacency[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      const int cls = result.edge_class[edge_id.at(key(v, w))];
      result.signatures[w] = result.signatures[v];
      result.signatures[w][cls / 64] ^= std::uint64_t{1} << (cls % 64);
      queue.push_back(w);
    }
  }
  return result;
}

int sageev_distance_check(const GraphBall& g) {
  const HyperplaneDecomposition h = hyperplane_decomposition(g);
  int worst = 0;
  for (std::size_t x = 0; x < g.n_vertices; ++x) {
    for (std::size_t y = x + 1; y < g.n_vertices; ++y) {
      int separating = 0;
      for (std::size_t w = 0; w < h.signatures[x].size(); ++w) {
        separating += std::popcount(h.signatures[x][w] ^ h.signatures[y][w]);
      }
      worst = std::max(worst, std::abs(separating - g.distance(x, y)));
    }
  }
  return worst;
}

NegativityResult conditionally_negative_check(const GraphBall& g, double tol) {
  const auto n = static_cast<Eigen::Index>(g.n_vertices);
  Eigen::MatrixXd D(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) D(x, y) = g.distance(x, y);
  }
  const Eigen::VectorXd row_mean = D.rowwise().mean();
  const double mean = row_mean.mean();
  Eigen::MatrixXd centered = D;
  centered.colwise() -= row_mean;
  centered.rowwise() -= row_mean.transpose();
  centered.array() += mean;
  const Eigen::VectorXd eig = symmetric_eigenvalues(centered);
  NegativityResult result;
  const double top = eig.size() > 0 ? eig.maxCoeff() : 0.0;
  const double scale = eig.size() > 0 ? std::max(1.0, eig.cwiseAbs().maxCoeff()) : 1.0;
  result.max_violation = std::max(0.0, top);
  result.holds = top <= tol * scale;
  return result;
}

bool schoenberg_check(const GraphBall& g, double s, double tol) {
  std::vector<double> values(static_cast<std::size_t>(g.diameter()) + 1);
  for (std::size_t d = 0; d < values.size(); ++d) {
    values[d] = d == 0 ? 1.0 : std::pow(s, static_cast<double>(d));
  }
  return psd_of(gram_from_values(g, values), tol).psd;
}

bool median_kernel_check(const GraphBall& g, const DiscreteMeasure& measure, double tol) {
  if (measure.dims != 1) {
    throw Error(ErrorCode::dimension_mismatch, "median kernel needs a one-dimensional measure");
  }
  std::vector<double> values(static_cast<std::size_t>(g.diameter()) + 1);
  for (std::size_t d = 0; d < values.size(); ++d) {
    double v = measure.c_plus + (d % 2 == 0 ? 1.0 : -1.0) * measure.c_minus;
    for (const auto& atom : measure.atoms) {
      v += atom.weight * (d == 0 ? 1.0 : std::pow(atom.location[0], static_cast<double>(d)));
    }
    values[d] = v;
  }
  return psd_of(gram_from_values(g, values), tol).psd;
}

}  // namespace radpd

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

// radpd command-line driver. Data goes to stdout as one JSON document,
// diagnostics to stderr.
//
// Exit codes: 0 success or member, 1 negative verdict, 2 inconclusive,
// 3 usage or input error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radpd/radpd.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct Failure {
  radpd_status status;
  std::string message;
};

void check(radpd_status status) {
  if (status != RADPD_OK) throw Failure{status, radpd_last_error()};
}

int exit_code_for(radpd_status status) {
  switch (status) {
    case RADPD_ERR_NOT_POSITIVE:
    case RADPD_ERR_LIMITS_VIOLATED:
    case RADPD_ERR_NOT_MEDIAN:
      return kExitNegative;
    case RADPD_ERR_JOINT_DIAGONALIZATION_FAILED:
    case RADPD_ERR_SPECTRUM_OUT_OF_RANGE:
      return kExitInconclusive;
    default:
      return kExitUsage;
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Kernel = std::unique_ptr<radpd_kernel, Deleter<radpd_kernel, radpd_kernel_free>>;
using Measure = std::unique_ptr<radpd_measure, Deleter<radpd_measure, radpd_measure_free>>;
using Graph = std::unique_ptr<radpd_graph, Deleter<radpd_graph, radpd_graph_free>>;

std::string take_string(char* text) {
  std::string out(text);
  radpd_string_free(text);
  return out;
}

struct Options {
  std::string kernel;
  std::string space = "tree:inf";
  int trunc = 64;
  double tol = 1e-10;
  std::uint64_t seed = 0x5eed;
  std::string out;
  int n_report = 30;
  // witness
  long q = 2;
  double eps = 1.0;
  int witness_trunc = 8;
  // oracle and median
  int radius = 3;
  std::string graph;
  std::string graph_file;
  std::size_t cap = 0;
  std::string checks = "median,sageev,condneg,schoenberg,kernel";
  std::vector<double> s_grid{-1.0, -0.5, 0.0, 0.5, 1.0};
  int random_measures = 10;
  // reconstruct
  std::string measure;
  std::vector<int> index;
  int n_max = 10;
};

// Inline JSON when the argument starts with '{', a file path otherwise.
std::string read_document(const std::string& arg, const char* what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw Failure{RADPD_ERR_IO, std::string("cannot open ") + what + " file '" + arg + "'"};
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Kernel load_kernel(const Options& o) {
  if (o.kernel.empty()) throw Failure{RADPD_ERR_INVALID_ARGUMENT, "--kernel is required"};
  radpd_kernel* phi = nullptr;
  check(radpd_kernel_from_json(read_document(o.kernel, "kernel").c_str(), &phi));
  return Kernel(phi);
}

long parse_degree(const std::string& text) {
  if (text == "inf" || text == "infinity") return RADPD_Q_INFINITY;
  std::size_t used = 0;
  long q = 0;
  try {
    q = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || q < 2) {
    throw Failure{RADPD_ERR_PARSE, "bad degree '" + text + "' (need an integer >= 2 or inf)"};
  }
  return q;
}

std::vector<long> parse_space(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (colon == std::string::npos || (kind != "tree" && kind != "product")) {
    throw Failure{RADPD_ERR_PARSE, "space must be tree:<q|inf> or product:<q1,q2,...>"};
  }
  std::vector<long> qs;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) qs.push_back(parse_degree(item));
  if (qs.empty() || (kind == "tree" && qs.size() != 1)) {
    throw Failure{RADPD_ERR_PARSE, "bad space '" + text + "'"};
  }
  return qs;
}

void emit(const Options& o, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw Failure{RADPD_ERR_IO, "cannot write '" + o.out + "'"};
  file << text;
}

// Multi-indices of length dims with total at most n_max, lexicographic.
std::vector<std::vector<int>> indices_upto(std::size_t dims, int n_max) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(dims, 0);
  auto rec = [&](auto&& self, std::size_t i, int budget) -> void {
    if (i == dims) {
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= budget; ++k) {
      current[i] = k;
      self(self, i + 1, budget - k);
    }
    current[i] = 0;
  };
  rec(rec, 0, n_max);
  return out;
}

int cmd_check(const Options& o) {
  const Kernel phi = load_kernel(o);
  const auto qs = parse_space(o.space);
  char* text = nullptr;
  check(radpd_check_json(phi.get(), qs.data(), qs.size(), o.trunc, o.tol, &text));
  const json report = json::parse(take_string(text));
  emit(o, report);
  const std::string verdict = report.at("verdict");
  std::cerr << "check " << o.space << " M=" << o.trunc << ": " << verdict
            << " (min eigenvalue " << report.at("min_eigenvalue").get<double>() << ")\n";
  if (verdict == "member") return kExitOk;
  if (verdict == "non_member") return kExitNegative;
  return kExitInconclusive;
}

int cmd_moments(const Options& o) {
  const Kernel phi = load_kernel(o);
  const auto qs = parse_space(o.space);
  radpd_measure* raw_mu = nullptr;
  radpd_moment_info info{};
  check(radpd_spectral_measure(phi.get(), qs.data(), qs.size(), o.trunc, o.tol, o.seed, &raw_mu,
                               &info));
  const Measure mu(raw_mu);
  char* text = nullptr;
  check(radpd_measure_to_json(mu.get(), &text));

  double error = 0.0;
  int checked = 0;
  for (const auto& n : indices_upto(qs.size(), o.n_report)) {
    int total = 0;
    for (int k : n) total += k;
    double expected = 0.0, got = 0.0;
    if (radpd_kernel_eval(phi.get(), total, &expected) != RADPD_OK) continue;
    check(radpd_measure_reconstruct(mu.get(), qs.data(), n.data(), n.size(), &got));
    error = std::max(error, std::abs(got - expected));
    ++checked;
  }
  json doc{{"space", o.space},
           {"truncation", o.trunc},
           {"measure", json::parse(take_string(text))},
           {"rank", info.rank},
           {"symmetrization_defect", info.symmetrization_defect},
           {"boundary_band_mass", info.boundary_band_mass},
           {"n_report", o.n_report},
           {"indices_checked", checked},
           {"reconstruction_error", error}};
  if (qs.size() == 1) {
    double q_error = 0.0;
    if (radpd_measure_q_moment_error(mu.get(), phi.get(), qs[0], o.n_report, &q_error) ==
        RADPD_OK) {
      doc["q_moment_error"] = q_error;
    }
  }
  emit(o, doc);
  std::cerr << "moments " << o.space << ": " << doc["measure"]["atoms"].size()
            << " interior atoms, reconstruction error " << error << "\n";
  return kExitOk;
}

int cmd_reconstruct(const Options& o) {
  if (o.measure.empty()) throw Failure{RADPD_ERR_INVALID_ARGUMENT, "--measure is required"};
  radpd_measure* raw_mu = nullptr;
  check(radpd_measure_from_json(read_document(o.measure, "measure").c_str(), &raw_mu));
  const Measure mu(raw_mu);
  const auto qs = parse_space(o.space);
  std::vector<std::vector<int>> targets;
  if (!o.index.empty()) {
    targets.push_back(o.index);
  } else {
    targets = indices_upto(qs.size(), o.n_max);
  }
  json values = json::array();
  for (const auto& n : targets) {
    double value = 0.0;
    check(radpd_measure_reconstruct(mu.get(), qs.data(), n.data(), n.size(), &value));
    values.push_back({{"index", n}, {"value", value}});
  }
  emit(o, json{{"space", o.space}, {"values", std::move(values)}});
  return kExitOk;
}

int cmd_cor5(const Options& o) {
  radpd_smoothed_witness w{};
  check(radpd_corollary5(o.q, o.eps, o.witness_trunc, &w));
  emit(o, json{{"corollary", "cor5"},
               {"q", o.q},
               {"eps", o.eps},
               {"in_Rq", w.in_rq != 0},
               {"entry11", w.entry11},
               {"closed_form", w.closed_form},
               {"agrees", w.agrees != 0}});
  return (w.in_rq && w.agrees && w.entry11 < 0.0) ? kExitOk : kExitNegative;
}

int cmd_cor6(const Options& o) {
  radpd_product_witness w{};
  check(radpd_corollary6(o.q, o.witness_trunc, &w));
  emit(o, json{{"corollary", "cor6"},
               {"q", o.q},
               {"in_Rq", w.in_rq != 0},
               {"quad_form", w.quad_form},
               {"closed_form", w.closed_form},
               {"table_form", w.table_form},
               {"agrees", w.agrees != 0}});
  return (w.in_rq && w.agrees && w.quad_form < 0.0) ? kExitOk : kExitNegative;
}

Graph load_graph(const Options& o) {
  radpd_graph* g = nullptr;
  if (!o.graph_file.empty()) {
    check(radpd_graph_from_edge_file(o.graph_file.c_str(), &g));
  } else if (!o.graph.empty()) {
    check(radpd_graph_from_spec(o.graph.c_str(), o.cap, &g));
  } else {
    throw Failure{RADPD_ERR_INVALID_ARGUMENT, "--graph or --graph-file is required"};
  }
  return Graph(g);
}

// Ball of radius R in the space, or the explicit graph when one is given.
Graph oracle_graph(const Options& o) {
  if (!o.graph.empty() || !o.graph_file.empty()) return load_graph(o);
  std::string spec;
  for (long q : parse_space(o.space)) {
    if (q == RADPD_Q_INFINITY) {
      throw Failure{RADPD_ERR_INVALID_ARGUMENT, "balls need finite degrees"};
    }
    if (!spec.empty()) spec += "*";
    spec += "tree:" + std::to_string(q) + ":" + std::to_string(o.radius);
  }
  radpd_graph* g = nullptr;
  check(radpd_graph_from_spec(spec.c_str(), o.cap, &g));
  return Graph(g);
}

int cmd_oracle(const Options& o) {
  const Kernel phi = load_kernel(o);
  const Graph g = oracle_graph(o);
  int psd = 0;
  double min_eigenvalue = 0.0;
  size_t n = 0;
  check(radpd_graph_vertex_count(g.get(), &n));
  check(radpd_graph_gram_psd(g.get(), phi.get(), o.tol, &psd, &min_eigenvalue));
  emit(o, json{{"psd", psd != 0}, {"min_eigenvalue", min_eigenvalue}, {"n_vertices", n}});
  std::cerr << "oracle: " << n << " vertices, " << (psd ? "PSD" : "not PSD") << "\n";
  return psd ? kExitOk : kExitNegative;
}

Measure random_measure(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> mass(0.0, 2.0);
  std::uniform_int_distribution<int> count(0, 4);
  json atoms = json::array();
  const int k = count(rng);
  for (int i = 0; i < k; ++i) atoms.push_back({{"location", json::array({unit(rng)})}, {"weight", mass(rng)}});
  const json doc{{"dims", 1}, {"atoms", atoms}, {"c_plus", mass(rng)}, {"c_minus", mass(rng)}};
  radpd_measure* mu = nullptr;
  check(radpd_measure_from_json(doc.dump().c_str(), &mu));
  return Measure(mu);
}

int cmd_median(const Options& o) {
  const Graph g = load_graph(o);
  std::vector<std::string> checks;
  {
    std::stringstream list(o.checks);
    std::string item;
    while (std::getline(list, item, ',')) checks.push_back(item);
  }
  json results = json::object();
  bool all = true;
  for (const auto& name : checks) {
    json entry;
    bool pass = false;
    if (name == "median") {
      int median = 0;
      check(radpd_graph_is_median(g.get(), &median));
      pass = median != 0;
      entry = {{"pass", pass}, {"median", pass}};
    } else if (name == "sageev") {
      int discrepancy = 0, classes = 0;
      check(radpd_graph_sageev(g.get(), &discrepancy));
      check(radpd_graph_hyperplane_count(g.get(), &classes));
      pass = discrepancy == 0;
      entry = {{"pass", pass}, {"max_discrepancy", discrepancy}, {"hyperplanes", classes}};
    } else if (name == "condneg") {
      int holds = 0;
      double violation = 0.0;
      check(radpd_graph_conditionally_negative(g.get(), o.tol, &holds, &violation));
      pass = holds != 0;
      entry = {{"pass", pass}, {"max_violation", violation}};
    } else if (name == "schoenberg") {
      json per_s = json::array();
      pass = true;
      for (double s : o.s_grid) {
        int ok = 0;
        check(radpd_graph_schoenberg(g.get(), s, o.tol, &ok));
        per_s.push_back({{"s", s}, {"pass", ok != 0}});
        pass = pass && ok != 0;
      }
      entry = {{"pass", pass}, {"grid", std::move(per_s)}};
    } else if (name == "kernel") {
      std::mt19937_64 rng(o.seed);
      int passed = 0;
      for (int k = 0; k < o.random_measures; ++k) {
        const Measure mu = random_measure(rng);
        int ok = 0;
        check(radpd_graph_median_kernel(g.get(), mu.get(), o.tol, &ok));
        passed += ok;
      }
      pass = passed == o.random_measures;
      entry = {{"pass", pass}, {"measures", o.random_measures}, {"passed", passed}};
    } else {
      throw Failure{RADPD_ERR_INVALID_ARGUMENT, "unknown check '" + name + "'"};
    }
    std::cerr << "  " << name << ": " << (pass ? "pass" : "FAIL") << "\n";
    results[name] = std::move(entry);
    all = all && pass;
  }
  size_t n = 0;
  check(radpd_graph_vertex_count(g.get(), &n));
  emit(o, json{{"n_vertices", n}, {"checks", std::move(results)}, {"all_pass", all}});
  return all ? kExitOk : kExitNegative;
}

void add_job_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--kernel", o.kernel, "Kernel JSON, inline or a file path");
  cmd->add_option("--space", o.space, "tree:<q|inf> or product:<q1,q2,...>")->capture_default_str();
  cmd->add_option("--trunc", o.trunc, "Truncation M")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--tol", o.tol, "Eigenvalue tolerance")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial positive definite kernels on trees and their products"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for randomized steps")->capture_default_str();
  app.add_option("--out", o.out, "Write JSON here instead of stdout");

  auto* check_cmd = app.add_subcommand("check", "Membership verdict for a kernel on a space");
  add_job_options(check_cmd, o);

  auto* moments_cmd = app.add_subcommand("moments", "Representing measure of a kernel");
  add_job_options(moments_cmd, o);
  moments_cmd->add_option("--n-report", o.n_report, "Largest |n| in the round-trip check")
      ->capture_default_str();

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Evaluate phi from a measure");
  reconstruct_cmd->add_option("--measure", o.measure, "Measure JSON, inline or a file path")
      ->required();
  reconstruct_cmd->add_option("--space", o.space, "Degrees")->capture_default_str();
  reconstruct_cmd->add_option("--index", o.index, "Single multi-index")->delimiter(',');
  reconstruct_cmd->add_option("--n-max", o.n_max, "All indices with |n| <= n-max")
      ->capture_default_str();

  auto* witness_cmd = app.add_subcommand("witness", "Strict-inclusion witnesses");
  witness_cmd->require_subcommand(1);
  auto* cor5 = witness_cmd->add_subcommand("cor5", "Smoothed operator on T_q");
  cor5->add_option("--q", o.q, "Tree degree")->required();
  cor5->add_option("--eps", o.eps, "Smoothing offset, r = q + eps")->capture_default_str();
  cor5->add_option("--trunc", o.witness_trunc, "Truncation M")->capture_default_str();
  auto* cor6 = witness_cmd->add_subcommand("cor6", "Product operator on T_q x T_q");
  cor6->add_option("--q", o.q, "Tree degree")->required();
  cor6->add_option("--trunc", o.witness_trunc, "Truncation M")->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle", "Gram-matrix check on a finite ball");
  add_job_options(oracle_cmd, o);
  oracle_cmd->add_option("--radius", o.radius, "Ball radius")->capture_default_str();
  oracle_cmd->add_option("--graph", o.graph, "Graph spec instead of a ball");
  oracle_cmd->add_option("--graph-file", o.graph_file, "Edge-list file instead of a ball");
  oracle_cmd->add_option("--cap", o.cap, "Vertex cap (0 = default)");

  auto* median_cmd = app.add_subcommand("median", "Median-graph checks");
  median_cmd->add_option("--graph", o.graph, "Graph spec, e.g. cube:3 or tree:2:3*path:4");
  median_cmd->add_option("--graph-file", o.graph_file, "Edge-list file");
  median_cmd->add_option("--checks", o.checks, "Comma-separated subset")->capture_default_str();
  median_cmd->add_option("--s-grid", o.s_grid, "Schoenberg parameters")->delimiter(',');
  median_cmd->add_option("--measures", o.random_measures, "Random measures for the kernel check")
      ->capture_default_str();
  median_cmd->add_option("--tol", o.tol, "Eigenvalue tolerance")->capture_default_str();
  median_cmd->add_option("--cap", o.cap, "Vertex cap (0 = default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check_cmd) return cmd_check(o);
    if (*moments_cmd) return cmd_moments(o);
    if (*reconstruct_cmd) return cmd_reconstruct(o);
    if (*cor5) return cmd_cor5(o);
    if (*cor6) return cmd_cor6(o);
    if (*oracle_cmd) return cmd_oracle(o);
    if (*median_cmd) return cmd_median(o);
  } catch (const Failure& f) {
    std::cerr << "radpd: " << radpd_status_name(f.status) << ": " << f.message << "\n";
    return exit_code_for(f.status);
  } catch (const std::exception& e) {
    std::cerr << "radpd: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

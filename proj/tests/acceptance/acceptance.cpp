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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/graphs.hpp"
#include "core/moments.hpp"

using radpd::ExtendedDegree;
using radpd::RadialKernel;
using radpd::Verdict;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Mixture {
  ExtendedDegree q;
  std::vector<std::pair<double, double>> atoms;  // (s, weight), sorted by s
  RadialKernel kernel() const {
    std::vector<radpd::MixtureComponent> parts;
    for (const auto& [s, w] : atoms) parts.push_back({radpd::TreeEigenForm{q, s}, w});
    return RadialKernel::mixture(std::move(parts));
  }
};

Mixture random_mixture(std::mt19937_64& rng, ExtendedDegree q) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> loc(-0.9, 0.9), wt(0.1, 2.0);
  Mixture m{q, {}};
  const int k = count(rng);
  while (static_cast<int>(m.atoms.size()) < k) {
    const double s = loc(rng);
    const bool apart = std::all_of(m.atoms.begin(), m.atoms.end(),
                                   [&](const auto& a) { return std::abs(a.first - s) >= 0.1; });
    if (apart) m.atoms.emplace_back(s, wt(rng));
  }
  std::sort(m.atoms.begin(), m.atoms.end());
  return m;
}

std::vector<Mixture> criterion_mixtures() {
  std::mt19937_64 rng(20261016);
  std::vector<Mixture> out;
  for (int k = 0; k < 20; ++k) out.push_back(random_mixture(rng, ExtendedDegree::finite(2 + k % 3)));
  return out;
}

radpd::MembershipReport check(const RadialKernel& phi, std::vector<ExtendedDegree> qs, int M) {
  return radpd::check_positive_definite(phi, qs, M);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome polynomial_identities() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> xs;
  for (int k = 0; k < 100; ++k) xs.push_back(unit(rng));
  std::vector<ExtendedDegree> degrees;
  for (long q = 2; q <= 10; ++q) degrees.push_back(ExtendedDegree::finite(q));
  degrees.push_back(ExtendedDegree::infinite());

  double identity = 0.0, geometric = 0.0, bound = 0.0;
  long endpoint = 0, parity = 0;
  for (const auto q : degrees) {
    const auto one = radpd::eval_Q_upto(q, 60, 1.0);
    double sum = 0.0;
    for (int n = 0; n <= 60; ++n) {
      sum += std::pow(q.inv_q(), n);
      geometric = std::max(geometric, std::abs(one[n] - sum) / sum);
    }
    const auto pp = radpd::eval_P_upto(q, 60, 1.0);
    const auto pm = radpd::eval_P_upto(q, 60, -1.0);
    for (int n = 0; n <= 60; ++n) {
      endpoint += pp[n] != 1.0;
      endpoint += pm[n] != (n % 2 ? -1.0 : 1.0);
    }
    for (double x : xs) {
      const auto P = radpd::eval_P_upto(q, 62, x);
      const auto Pneg = radpd::eval_P_upto(q, 62, -x);
      const auto Q = radpd::eval_Q_upto(q, 60, x);
      for (int n = 0; n <= 60; ++n) {
        const double lhs = P[n] - P[n + 2];
        const double rhs = q.plus() * (1.0 - x * x) * Q[n];
        const double scale = std::max({std::abs(P[n]), std::abs(P[n + 2]), 1e-300});
        identity = std::max(identity, std::abs(lhs - rhs) / scale);
        parity += Pneg[n] != (n % 2 ? -P[n] : P[n]);
        bound = std::max(bound, std::abs(P[n]) - 1.0);
      }
    }
  }
  Outcome o;
  o.pass = identity <= 1e-12 && geometric <= 1e-12 && endpoint == 0 && parity == 0 && bound <= 1e-12;
  o.detail = "identity rel " + fmt(identity) + ", Q(1) rel " + fmt(geometric) + ", endpoint misses " +
             std::to_string(endpoint) + ", parity misses " + std::to_string(parity) +
             ", max |P|-1 " + fmt(bound);
  return o;
}

Outcome geometric_round_trip() {
  const auto inf = ExtendedDegree::infinite();
  constexpr int M = 64;
  double min_eig = 0.0, trace_err = 0.0, norm_gap = 0.0, loc_err = 0.0, wt_err = 0.0, rec = 0.0;
  std::size_t atoms_bad = 0;
  for (double s : {0.5, -0.7}) {
    const auto phi = RadialKernel::geometric(s);
    const auto stats = radpd::spectral_stats(radpd::build_hankel(phi, M).entries);
    min_eig = std::min(min_eig, stats.min_eigenvalue);
    trace_err = std::max(trace_err, std::abs(stats.trace - (1.0 - std::pow(s, 2 * M))));
    norm_gap = std::max(norm_gap, std::abs(stats.trace_norm - stats.trace));
    const auto sol = radpd::spectral_measure_tree(phi, inf, M);
    if (sol.measure.atoms.size() != 1) {
      ++atoms_bad;
      continue;
    }
    loc_err = std::max(loc_err, std::abs(sol.measure.atoms[0].location[0] - s));
    wt_err = std::max(wt_err, std::abs(sol.measure.atoms[0].weight - 1.0));
    for (int n = 0; n <= 40; ++n) {
      const int idx[] = {n};
      rec = std::max(rec, std::abs(radpd::reconstruct(sol.measure, std::span(&inf, 1), idx) - phi(n)));
    }
  }
  Outcome o;
  o.pass = min_eig >= -1e-12 && trace_err <= 1e-12 && norm_gap <= 1e-12 && atoms_bad == 0 &&
           loc_err <= 1e-8 && wt_err <= 1e-8 && rec <= 1e-8;
  o.detail = "min eig " + fmt(min_eig) + ", trace err " + fmt(trace_err) + ", atom err " +
             fmt(loc_err) + "/" + fmt(wt_err) + ", reconstruction " + fmt(rec);
  if (atoms_bad) o.detail += ", wrong atom count in " + std::to_string(atoms_bad);
  return o;
}

Outcome mixture_round_trip() {
  double loc_err = 0.0, wt_err = 0.0, rec = 0.0;
  int non_members = 0, count_bad = 0, errors = 0;
  for (const auto& m : criterion_mixtures()) {
    const auto phi = m.kernel();
    if (check(phi, {m.q}, 64).verdict != Verdict::member) ++non_members;
    try {
      const auto sol = radpd::spectral_measure_tree(phi, m.q, 64);
      if (sol.measure.atoms.size() != m.atoms.size()) {
        ++count_bad;
        continue;
      }
      for (std::size_t k = 0; k < m.atoms.size(); ++k) {
        loc_err = std::max(loc_err, std::abs(sol.measure.atoms[k].location[0] - m.atoms[k].first));
        wt_err = std::max(wt_err, std::abs(sol.measure.atoms[k].weight - m.atoms[k].second));
      }
      for (int n = 0; n <= 40; ++n) {
        const int idx[] = {n};
        rec = std::max(rec, std::abs(radpd::reconstruct(sol.measure, std::span(&m.q, 1), idx) - phi(n)));
      }
    } catch (const radpd::Error&) {
      ++errors;
    }
  }
  Outcome o;
  o.pass = non_members == 0 && count_bad == 0 && errors == 0 && loc_err <= 1e-6 && wt_err <= 1e-6 &&
           rec <= 1e-8;
  o.detail = "20 mixtures, non-members " + std::to_string(non_members) + ", atom-count misses " +
             std::to_string(count_bad) + ", solver errors " + std::to_string(errors) +
             ", atom err " + fmt(loc_err) + "/" + fmt(wt_err) + ", reconstruction " + fmt(rec);
  return o;
}

Outcome smoothed_witness() {
  Outcome o;
  double worst = 0.0;
  for (long q : {2L, 3L, 4L}) {
    const auto d = ExtendedDegree::finite(q);
    const auto phi = RadialKernel::tree_eigen(d, 0.0);
    if (check(phi, {d}, 64).verdict != Verdict::member) {
      o.pass = false;
      o.detail += "P(0) not member on q=" + std::to_string(q) + "; ";
    }
    const double entry = radpd::build_smoothed(phi, static_cast<double>(q + 1), 16).entries(1, 1);
    const double expected = d.plus() * (1.0 / (q + 1.0) - d.inv_q());
    worst = std::max(worst, std::abs(entry - expected));
    if (q == 2) o.detail += "q=2 entry " + fmt(entry) + "; ";
  }
  o.pass = o.pass && worst <= 1e-14;
  o.detail += "max deviation " + fmt(worst);
  return o;
}

Outcome product_witness() {
  Outcome o;
  double form_err = 0.0, table_err = 0.0, ratio = 0.0;
  for (long q : {2L, 3L, 5L}) {
    const auto d = ExtendedDegree::finite(q);
    const std::vector<ExtendedDegree> qs{d, d};
    const auto B = radpd::build_product_b(RadialKernel::tree_eigen(d, 0.0), qs, 4);
    const auto box = B.index();
    const int e01[] = {0, 1}, e10[] = {1, 0};
    const std::size_t a = box.flatten(e01), b = box.flatten(e10);
    const double form = B.entries(a, a) + B.entries(b, b) + 2.0 * B.entries(a, b);
    const double target = -2.0 / static_cast<double>(q);
    form_err = std::max(form_err, std::abs(form - target));
    ratio = form / target;
    for (std::size_t i = 0; i < box.size(); ++i) {
      for (std::size_t j = 0; j < box.size(); ++j) {
        const double t = radpd::corollary6_table_entry(q, box.unflatten(i), box.unflatten(j));
        table_err = std::max(table_err, std::abs(B.entries(i, j) - t));
      }
    }
  }
  o.pass = form_err <= 1e-14 && table_err <= 1e-14;
  o.detail = "quadratic form vs -2/q max err " + fmt(form_err) + ", table max err " + fmt(table_err) +
             ", form/(-2/q) at q=5 " + fmt(ratio) + " = (1+1/q)^2";
  return o;
}

Outcome cb_norm() {
  double worst = 0.0;
  for (long q : {2L, 3L}) {
    const auto d = ExtendedDegree::finite(q);
    for (double s : {0.0, 0.4, -0.4}) {
      const double norm = radpd::cb_norm_estimate(RadialKernel::tree_eigen(d, s), std::span(&d, 1), 128);
      worst = std::max(worst, std::abs(norm - 1.0));
    }
  }
  return {worst <= 1e-6, "max |norm - 1| " + fmt(worst)};
}

Outcome oracle_consistency() {
  struct Case {
    std::string name;
    RadialKernel phi;
    std::vector<long> ball_degrees;
    std::vector<ExtendedDegree> product_space;
  };
  std::vector<Case> cases;
  const auto inf = ExtendedDegree::infinite();
  for (double s : {0.5, -0.7}) {
    cases.push_back({"geometric " + fmt(s), RadialKernel::geometric(s), {2, 3}, {inf, inf}});
  }
  int k = 0;
  for (const auto& m : criterion_mixtures()) {
    cases.push_back({"mixture " + std::to_string(k++), m.kernel(), {m.q.q()}, {m.q, m.q}});
  }

  int balls = 0, products = 0, failures = 0;
  double worst = 0.0;
  std::string failed;
  for (const auto& c : cases) {
    for (long q : c.ball_degrees) {
      for (int R = 1; R <= 5; ++R) {
        const auto r = radpd::gram_psd_check(radpd::tree_ball(q, R), c.phi, 1e-8);
        ++balls;
        worst = std::min(worst, r.min_eigenvalue);
        if (!r.psd) {
          ++failures;
          failed += " " + c.name;
        }
      }
      if (check(c.phi, c.product_space, 8).verdict == Verdict::member) {
        const auto ball = radpd::tree_ball(q, 3);
        const radpd::GraphBall factors[] = {ball, ball};
        const auto r = radpd::gram_psd_check(radpd::product_ball(factors), c.phi, 1e-8);
        ++products;
        if (!r.psd) {
          ++failures;
          failed += " " + c.name + "(product)";
        }
      }
    }
  }
  const auto q2 = ExtendedDegree::finite(2);
  const bool control = check(RadialKernel::tree_eigen(q2, 0.0), {q2, q2}, 8).verdict == Verdict::non_member;
  Outcome o;
  o.pass = failures == 0 && control;
  o.detail = std::to_string(balls) + " balls, " + std::to_string(products) + " product balls, failures " +
             std::to_string(failures) + failed + ", P(0) on [2,2] " + (control ? "non_member" : "NOT non_member");
  return o;
}

radpd::DiscreteMeasure random_measure(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> loc(-1.0, 1.0), wt(0.1, 2.0), boundary(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 4);
  radpd::DiscreteMeasure mu;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) mu.atoms.push_back({{loc(rng)}, wt(rng)});
  mu.c_plus = boundary(rng);
  mu.c_minus = boundary(rng);
  return mu;
}

Outcome median_suite() {
  std::vector<std::string> specs;
  for (int q : {2, 3}) {
    for (int R = 1; R <= 3; ++R) specs.push_back("tree:" + std::to_string(q) + ":" + std::to_string(R));
  }
  for (int a = 2; a <= 5; ++a) {
    for (int b = a; b <= 5; ++b) specs.push_back("grid:" + std::to_string(a) + "x" + std::to_string(b));
  }
  specs.insert(specs.end(), {"cube:2", "cube:3", "tree:2:2*path:3", "tree:3:2*path:4", "tree:2:3*path:2"});

  std::mt19937_64 rng(8);
  std::string failed;
  for (const auto& spec : specs) {
    const auto g = radpd::graph_from_spec(spec);
    bool ok = radpd::is_median(g) && radpd::sageev_distance_check(g) == 0 &&
              radpd::conditionally_negative_check(g, 1e-9).holds;
    for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0}) ok = ok && radpd::schoenberg_check(g, s, 1e-9);
    for (int k = 0; k < 10; ++k) ok = radpd::median_kernel_check(g, random_measure(rng), 1e-9) && ok;
    if (!ok) failed += " " + spec;
  }
  for (const char* spec : {"cycle:5", "petersen"}) {
    if (radpd::is_median(radpd::graph_from_spec(spec))) failed += std::string(" ") + spec + "(median?)";
  }
  return {failed.empty(), std::to_string(specs.size()) + " median graphs, 2 non-median" +
                              (failed.empty() ? std::string() : ", failed:" + failed)};
}

Outcome cone_and_restriction() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> coef(0.01, 5.0);
  const auto q3 = ExtendedDegree::finite(3), q2 = ExtendedDegree::finite(2);
  constexpr int M = 48;
  std::vector<RadialKernel> members;
  int not_member3 = 0, restriction = 0, cone = 0;
  for (int k = 0; k < 20; ++k) {
    const auto phi = random_mixture(rng, q3).kernel();
    if (check(phi, {q3}, M).verdict != Verdict::member) {
      ++not_member3;
      continue;
    }
    members.push_back(phi);
    if (check(phi, {q2}, M).verdict != Verdict::member) ++restriction;
  }
  for (std::size_t k = 0; k + 1 < members.size(); ++k) {
    const auto sum = radpd::positive_combination(coef(rng), members[k], coef(rng), members[k + 1]);
    if (check(sum, {q3}, M).verdict != Verdict::member) ++cone;
  }
  return {not_member3 == 0 && restriction == 0 && cone == 0,
          "20 mixtures on T_3, non-members " + std::to_string(not_member3) + ", restriction misses " +
              std::to_string(restriction) + ", cone misses " + std::to_string(cone)};
}

Outcome diagonal_support() {
  std::mt19937_64 rng(10);
  const auto q2 = ExtendedDegree::finite(2);
  const std::vector<ExtendedDegree> qs{q2, q2};
  std::map<std::string, int> errors;
  double worst = 0.0;
  int solved = 0;
  std::size_t atoms = 0;
  for (int k = 0; k < 10; ++k) {
    const auto phi = random_mixture(rng, q2).kernel();
    try {
      const auto sol = radpd::spectral_measure_product(phi, qs, 8);
      ++solved;
      atoms += sol.measure.atoms.size();
      for (const auto& a : sol.measure.atoms) {
        worst = std::max(worst, std::abs(a.location[0] - a.location[1]));
      }
    } catch (const radpd::Error& e) {
      ++errors[radpd::to_string(e.code())];
    }
  }
  std::string detail = std::to_string(solved) + "/10 solved, " + std::to_string(atoms) +
                       " atoms, max |t1 - t2| " + fmt(worst);
  for (const auto& [name, n] : errors) detail += ", " + name + " x" + std::to_string(n);
  return {errors.empty() && worst <= 1e-5, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "polynomial identities", 1.0, polynomial_identities},
      {2, "geometric round trip on T_inf", 1.0, geometric_round_trip},
      {3, "mixture round trip on T_q", 10.0, mixture_round_trip},
      {4, "smoothed-operator witness", 1.0, smoothed_witness},
      {5, "product-operator witness", 1.0, product_witness},
      {6, "cb-norm normalization", 5.0, cb_norm},
      {7, "finite-ball oracle consistency", 60.0, oracle_consistency},
      {8, "median-graph suite", 30.0, median_suite},
      {9, "cone and restriction", 10.0, cone_and_restriction},
      {10, "diagonal support on T_2 x T_2", 10.0, diagonal_support},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += ", over budget " + fmt(c.budget_s) + " s";
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s (%s, %.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

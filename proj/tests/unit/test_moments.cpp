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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/moments.hpp"

using radpd::ExtendedDegree;
using radpd::RadialKernel;

namespace {

const ExtendedDegree kInf = ExtendedDegree::infinite();

double max_reconstruction_error(const RadialKernel& phi, const radpd::DiscreteMeasure& mu,
                                ExtendedDegree q, int n_max) {
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const int idx[] = {n};
    worst = std::max(worst, std::abs(radpd::reconstruct(mu, std::span(&q, 1), idx) - phi(n)));
  }
  return worst;
}

}  // namespace

TEST_CASE("psi matrix") {
  const auto S = radpd::build_psi_matrix(kInf, 3);
  Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(3, 3);
  shift(1, 0) = shift(2, 1) = 1.0;
  CHECK(S == shift);
  const auto P = radpd::build_psi_matrix(ExtendedDegree::finite(2), 2);
  CHECK(P(0, 0) == 0.0);
  CHECK(P(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(P(1, 0) == doctest::Approx(2.0 / 3.0));
  const auto P5 = radpd::build_psi_matrix(ExtendedDegree::finite(5), 6);
  for (int j = 1; j < 5; ++j) CHECK(P5.col(j).sum() == doctest::Approx(1.0));
}

TEST_CASE("single atoms") {
  const auto g = radpd::spectral_measure_tree(RadialKernel::geometric(0.6), kInf, 32);
  REQUIRE(g.measure.atoms.size() == 1);
  CHECK(g.measure.atoms[0].location[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(g.measure.atoms[0].weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.measure.c_plus == 0.0);
  CHECK(g.measure.c_minus == 0.0);
  CHECK(g.rank == 1);

  const auto q3 = ExtendedDegree::finite(3);
  const auto t = radpd::spectral_measure_tree(RadialKernel::tree_eigen(q3, 0.25), q3, 64);
  REQUIRE(t.measure.atoms.size() == 1);
  CHECK(std::abs(t.measure.atoms[0].location[0] - 0.25) <= 1e-10);
  CHECK(std::abs(t.measure.atoms[0].weight - 1.0) <= 1e-8);
  CHECK(max_reconstruction_error(RadialKernel::tree_eigen(q3, 0.25), t.measure, q3, 40) <= 1e-10);
}

TEST_CASE("constant and alternating kernels are boundary masses") {
  const auto q2 = ExtendedDegree::finite(2);
  const auto one = radpd::spectral_measure_tree(RadialKernel::geometric(1.0), q2, 16);
  CHECK(one.measure.atoms.empty());
  CHECK(one.measure.c_plus == 1.0);
  CHECK(one.measure.c_minus == 0.0);
  const auto alt = radpd::spectral_measure_tree(RadialKernel::geometric(-1.0), q2, 16);
  CHECK(alt.measure.atoms.empty());
  CHECK(alt.measure.c_plus == 0.0);
  CHECK(alt.measure.c_minus == 1.0);
  const ExtendedDegree pair[] = {q2, ExtendedDegree::finite(3)};
  const auto prod = radpd::spectral_measure_product(RadialKernel::geometric(1.0), pair, 4);
  CHECK(prod.measure.atoms.empty());
  CHECK(prod.measure.c_plus == 1.0);
}

TEST_CASE("errors") {
  const auto q3 = ExtendedDegree::finite(3);
  const auto p2 = RadialKernel::tree_eigen(ExtendedDegree::finite(2), 0.0);
  try {
    radpd::spectral_measure_tree(p2, q3, 32);
    FAIL("expected NotPositive");
  } catch (const radpd::Error& e) {
    CHECK(e.code() == radpd::ErrorCode::not_positive);
  }
  const auto bad = RadialKernel::table(std::vector<double>(80, 0.0), 0.1, 0.5);
  try {
    radpd::spectral_measure_tree(bad, q3, 16);
    FAIL("expected LimitsViolated");
  } catch (const radpd::Error& e) {
    CHECK(e.code() == radpd::ErrorCode::limits_violated);
  }
}

TEST_CASE("mixture round trips on trees") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> loc(-0.9, 0.9), wt(0.1, 2.0);
  std::uniform_int_distribution<int> count(1, 4);
  for (int trial = 0; trial < 12; ++trial) {
    const auto q = ExtendedDegree::finite(2 + trial % 3);
    std::vector<double> atoms;
    while (static_cast<int>(atoms.size()) < count(rng)) {
      const double s = loc(rng);
      if (std::all_of(atoms.begin(), atoms.end(), [&](double t) { return std::abs(t - s) > 0.1; })) {
        atoms.push_back(s);
      }
    }
    std::vector<radpd::MixtureComponent> parts;
    std::vector<std::pair<double, double>> truth;
    for (double s : atoms) {
      const double w = wt(rng);
      parts.push_back({radpd::TreeEigenForm{q, s}, w});
      truth.emplace_back(s, w);
    }
    std::sort(truth.begin(), truth.end());
    const auto phi = RadialKernel::mixture(parts);
    const auto sol = radpd::spectral_measure_tree(phi, q, 64);
    REQUIRE(sol.measure.atoms.size() == truth.size());
    for (std::size_t k = 0; k < truth.size(); ++k) {
      CHECK(std::abs(sol.measure.atoms[k].location[0] - truth[k].first) <= 1e-6);
      CHECK(std::abs(sol.measure.atoms[k].weight - truth[k].second) <= 1e-6);
    }
    CHECK(max_reconstruction_error(phi, sol.measure, q, 40) <= 1e-8);
    CHECK(radpd::verify_q_moments(phi, sol.raw, q, 40) <= 1e-8);
    CHECK(sol.boundary_band_mass <= 1e-6 * phi(0));
  }
}

TEST_CASE("continuous measure is reproduced on the moments the truncation sees") {
  // phi = P^{(2)}(0) has no finite representing measure on T_3 but is a single
  // atom on T_2; the geometric sequence on T_2 has an absolutely continuous one.
  const auto q2 = ExtendedDegree::finite(2);
  const auto phi = RadialKernel::geometric(0.5);
  const auto sol = radpd::spectral_measure_tree(phi, q2, 64);
  CHECK(sol.measure.atoms.size() > 10);
  CHECK(std::abs(sol.measure.total_mass() - 1.0) <= 1e-8);
  CHECK(max_reconstruction_error(phi, sol.measure, q2, 2 * 64 / 3) <= 1e-8);
  for (const auto& a : sol.measure.atoms) CHECK(a.weight > 0.0);
}

TEST_CASE("q-moments") {
  const auto g = RadialKernel::geometric(0.5);
  const auto sol = radpd::spectral_measure_tree(g, kInf, 32);
  CHECK(radpd::verify_q_moments(g, sol.raw, kInf, 20) <= 1e-10);
  const auto q2 = ExtendedDegree::finite(2);
  const auto p = RadialKernel::tree_eigen(q2, 0.0);
  const auto ps = radpd::spectral_measure_tree(p, q2, 64);
  CHECK(radpd::verify_q_moments(p, ps.raw, q2, 20) <= 1e-8);
  const auto one = radpd::spectral_measure_tree(RadialKernel::geometric(1.0), q2, 8);
  CHECK(one.raw.atoms.empty());
  CHECK(radpd::verify_q_moments(RadialKernel::geometric(1.0), one.raw, q2, 10) == 0.0);
}

TEST_CASE("odd-vanishing kernels give symmetric atoms") {
  const auto q3 = ExtendedDegree::finite(3);
  const auto phi = RadialKernel::mixture(
      {{radpd::TreeEigenForm{q3, 0.5}, 0.7}, {radpd::TreeEigenForm{q3, -0.5}, 0.7},
       {radpd::TreeEigenForm{q3, 0.2}, 1.1}, {radpd::TreeEigenForm{q3, -0.2}, 1.1}});
  const auto sol = radpd::spectral_measure_tree(phi, q3, 48);
  const auto& atoms = sol.measure.atoms;
  REQUIRE(atoms.size() == 4);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto& mirror = atoms[atoms.size() - 1 - k];
    CHECK(std::abs(atoms[k].location[0] + mirror.location[0]) <= 1e-8);
    CHECK(std::abs(atoms[k].weight - mirror.weight) <= 1e-8);
  }
}

TEST_CASE("reconstruct") {
  radpd::DiscreteMeasure delta;
  delta.atoms.push_back({{0.6}, 1.0});
  const int five[] = {5};
  CHECK(radpd::reconstruct(delta, std::span(&kInf, 1), five) == doctest::Approx(0.07776));

  radpd::DiscreteMeasure plus;
  plus.dims = 2;
  plus.c_plus = 1.0;
  const auto q2 = ExtendedDegree::finite(2);
  const ExtendedDegree pair[] = {q2, q2};
  const int n12[] = {1, 2};
  CHECK(radpd::reconstruct(plus, pair, n12) == 1.0);
  radpd::DiscreteMeasure minus = plus;
  minus.c_plus = 0.0;
  minus.c_minus = 1.0;
  CHECK(radpd::reconstruct(minus, pair, n12) == -1.0);
  CHECK_THROWS_AS(radpd::reconstruct(minus, std::span(&q2, 1), five), radpd::Error);
}

TEST_CASE("product of infinite trees gives diagonal atoms") {
  const ExtendedDegree pair[] = {kInf, kInf};
  const auto phi = RadialKernel::mixture({{radpd::GeometricForm{0.5}, 1.0},
                                          {radpd::GeometricForm{-0.3}, 2.0},
                                          {radpd::GeometricForm{0.8}, 0.5}});
  const auto sol = radpd::spectral_measure_product(phi, pair, 8);
  REQUIRE(sol.measure.atoms.size() == 3);
  for (const auto& a : sol.measure.atoms) {
    CHECK(std::abs(a.location[0] - a.location[1]) <= 1e-8);
  }
  CHECK(sol.measure.atoms[0].location[0] == doctest::Approx(-0.3));
  CHECK(sol.measure.atoms[0].weight == doctest::Approx(2.0));
}

TEST_CASE("separable product kernel converges with the truncation") {
  // s^{n1+n2} on T_2 x T_2 has an absolutely continuous measure; the truncated
  // atoms reproduce it up to an error of order q^{-M}.
  const auto q2 = ExtendedDegree::finite(2);
  const ExtendedDegree pair[] = {q2, q2};
  const auto phi = RadialKernel::geometric(0.5);
  auto worst_at = [&](int M) {
    const auto sol = radpd::spectral_measure_product(phi, pair, M);
    CHECK(sol.measure.atoms.size() == static_cast<std::size_t>(M * M));
    double worst = 0.0;
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) {
        const int idx[] = {a, b};
        worst = std::max(worst, std::abs(radpd::reconstruct(sol.measure, pair, idx) - phi(a + b)));
      }
    }
    return worst;
  };
  const double e6 = worst_at(6), e8 = worst_at(8), e12 = worst_at(12);
  CHECK(e8 < e6 / 3.0);
  CHECK(e12 < e8 / 9.0);
  CHECK(e12 <= 5e-4);
}

TEST_CASE("measure validation") {
  radpd::DiscreteMeasure m;
  m.atoms.push_back({{0.2}, 1.0});
  CHECK_NOTHROW(m.validate());
  m.atoms.push_back({{1.2}, 1.0});
  CHECK_THROWS_AS(m.validate(), radpd::Error);
  m.atoms.back() = {{0.1, 0.2}, 1.0};
  CHECK_THROWS_AS(m.validate(), radpd::Error);
  m.atoms.back() = {{0.1}, -1.0};
  CHECK_THROWS_AS(m.validate(), radpd::Error);
  m.atoms.pop_back();
  m.c_minus = -0.5;
  CHECK_THROWS_AS(m.validate(), radpd::Error);
}

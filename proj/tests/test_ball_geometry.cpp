// Copyright 2026  The conjprob authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ball_geometry.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "rng.hpp"
#include "special_functions.hpp"

namespace geom = conjprob::geom;
namespace special = conjprob::special;
using conjprob::CounterRng;

namespace {

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

double term(const geom::VolumePolynomial& poly, std::vector<int> m) {
  const auto it = poly.terms().find(m);
  REQUIRE(it != poly.terms().end());
  return it->second;
}

std::vector<double> random_radii(CounterRng& rng, int n, double lo,
                                 double hi) {
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = lo + (hi - lo) * rng.next_double();
  return r;
}

// Brute-force feasibility oracle: scan a fine grid of candidate common
// points over the bounding box of the balls.
bool intersect_by_grid_search(int dim, const std::vector<double>& centers,
                              const std::vector<double>& radii, double step) {
  const int n = static_cast<int>(radii.size());
  std::vector<double> lo(dim, 1e300);
  std::vector<double> hi(dim, -1e300);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < dim; ++a) {
      lo[a] = std::min(lo[a], centers[i * dim + a] - radii[i]);
      hi[a] = std::max(hi[a], centers[i * dim + a] + radii[i]);
    }
  }
  std::vector<std::int64_t> counts(dim);
  std::int64_t total = 1;
  for (int a = 0; a < dim; ++a) {
    counts[a] = static_cast<std::int64_t>((hi[a] - lo[a]) / step) + 1;
    total *= counts[a];
  }
  for (std::int64_t p = 0; p < total; ++p) {
    std::int64_t rest = p;
    bool inside = true;
    std::vector<double> y(dim);
    for (int a = 0; a < dim; ++a) {
      y[a] = lo[a] + static_cast<double>(rest % counts[a]) * step;
      rest /= counts[a];
    }
    for (int i = 0; i < n && inside; ++i) {
      double dist2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double delta = y[a] - centers[i * dim + a];
        dist2 += delta * delta;
      }
      inside = dist2 <= radii[i] * radii[i];
    }
    if (inside) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("volume polynomial for two balls on the line") {
  const auto poly = geom::intersection_volume_polynomial(2, 1);
  CHECK(poly.term_count() == 2);
  CHECK(rel_err(term(poly, {1, 0}), 2.0) < 1e-13);
  CHECK(rel_err(term(poly, {0, 1}), 2.0) < 1e-13);
  CHECK(poly.degree() == 1);
}

TEST_CASE("volume polynomial for two discs") {
  const auto poly = geom::intersection_volume_polynomial(2, 2);
  // omega_2 (r1 + r2)^2 expanded
  CHECK(poly.term_count() == 3);
  CHECK(rel_err(term(poly, {2, 0}), special::kPi) < 1e-13);
  CHECK(rel_err(term(poly, {1, 1}), 2.0 * special::kPi) < 1e-13);
  CHECK(rel_err(term(poly, {0, 2}), special::kPi) < 1e-13);
}

TEST_CASE("volume polynomial for three discs") {
  const auto poly = geom::intersection_volume_polynomial(3, 2);
  const double pi2 = special::kPi * special::kPi;
  CHECK(rel_err(term(poly, {2, 2, 0}), pi2) < 1e-13);
  CHECK(rel_err(term(poly, {2, 0, 2}), pi2) < 1e-13);
  CHECK(rel_err(term(poly, {0, 2, 2}), pi2) < 1e-13);
  CHECK(rel_err(term(poly, {2, 1, 1}), 2.0 * pi2) < 1e-13);
  CHECK(rel_err(term(poly, {1, 2, 1}), 2.0 * pi2) < 1e-13);
  CHECK(rel_err(term(poly, {1, 1, 2}), 2.0 * pi2) < 1e-13);
  CHECK(poly.term_count() == 6);
}

TEST_CASE("single ball degenerates to the constant 1") {
  const auto poly = geom::intersection_volume_polynomial(1, 3);
  CHECK(poly.term_count() == 1);
  CHECK(rel_err(term(poly, {0}), 1.0) < 1e-14);
  CHECK(rel_err(geom::coefficient_product_form(std::vector<int>{0}, 3), 1.0) <
        1e-14);
}

TEST_CASE("polynomial size limit") {
  CHECK_THROWS_AS(geom::intersection_volume_polynomial(9, 8),
                  std::length_error);
  CHECK_THROWS_AS(geom::intersection_volume_polynomial(0, 1),
                  std::invalid_argument);
}

TEST_CASE("product form reproduces the nested-sum coefficients") {
  for (int n = 1; n <= 5; ++n) {
    for (int d = 1; d <= 6; ++d) {
      const auto poly = geom::intersection_volume_polynomial(n, d);
      for (const auto& [m, c] : poly.terms()) {
        CHECK(c > 0.0);
        // product_form also validates that every key has entries in [0, d]
        // summing to (n-1)d
        CHECK(rel_err(geom::coefficient_product_form(m, d), c) < 1e-12);
      }
    }
  }
  CHECK(rel_err(geom::coefficient_product_form(std::vector<int>{1, 0}, 1),
                2.0) < 1e-13);
  CHECK(rel_err(geom::coefficient_product_form(std::vector<int>{2, 1, 1}, 2),
                2.0 * special::kPi * special::kPi) < 1e-13);
  CHECK_THROWS_AS(
      geom::coefficient_product_form(std::vector<int>{1, 1}, 1),
      std::domain_error);
  CHECK_THROWS_AS(
      geom::coefficient_product_form(std::vector<int>{3, -1}, 2),
      std::domain_error);
}

TEST_CASE("coefficients are symmetric under permutations") {
  for (int n = 2; n <= 5; ++n) {
    for (int d = 1; d <= 6; ++d) {
      const auto poly = geom::intersection_volume_polynomial(n, d);
      for (const auto& [m, c] : poly.terms()) {
        std::vector<int> sorted = m;
        std::sort(sorted.begin(), sorted.end());
        do {
          CHECK(rel_err(term(poly, sorted), c) < 1e-12);
        } while (std::next_permutation(sorted.begin(), sorted.end()));
      }
    }
  }
}

TEST_CASE("closed-form volumes at known configurations") {
  CHECK(rel_err(geom::intersection_volume({2, {1.0, 1.0}}),
                4.0 * special::kPi) < 1e-12);
  CHECK(rel_err(geom::intersection_volume({1, {1.0, 1.0, 1.0}}), 12.0) <
        1e-12);
  CHECK(rel_err(geom::intersection_volume({2, {1.0, 1.0, 1.0}}),
                9.0 * special::kPi * special::kPi) < 1e-12);
}

TEST_CASE("special-case formulas") {
  CHECK(rel_err(geom::intersection_volume_special({3, {1.0, 2.0}}),
                36.0 * special::kPi) < 1e-12);
  CHECK(rel_err(geom::intersection_volume_special({1, {0.5, 0.25}}), 1.5) <
        1e-13);
  CHECK(rel_err(geom::intersection_volume_special({2, {1.0, 1.0}}),
                4.0 * special::kPi) < 1e-12);
  CHECK(geom::intersection_volume_special({3, {1.0}}) == 1.0);
  CHECK_THROWS_AS(geom::intersection_volume_special({3, {1.0, 1.0, 1.0}}),
                  conjprob::unsupported_case_error);
}

TEST_CASE("special cases agree with the general polynomial") {
  CounterRng rng(2026, 11, 0);
  auto check_case = [&](int n, int d) {
    for (int rep = 0; rep < 100; ++rep) {
      geom::BallConfiguration config{d, random_radii(rng, n, 0.3, 2.0)};
      CHECK(rel_err(geom::intersection_volume_special(config),
                    geom::intersection_volume(config)) < 1e-10);
    }
  };
  for (int d = 1; d <= 8; ++d) check_case(2, d);
  for (int n = 1; n <= 6; ++n) check_case(n, 1);
  for (int n = 1; n <= 5; ++n) check_case(n, 2);
}

TEST_CASE("volume is homogeneous of degree (n-1)d") {
  CounterRng rng(2026, 12, 0);
  for (int n = 1; n <= 4; ++n) {
    for (int d = 1; d <= 4; ++d) {
      geom::BallConfiguration config{d, random_radii(rng, n, 0.5, 1.5)};
      const double base = geom::intersection_volume(config);
      const double scale = 1.0 + rng.next_double();
      geom::BallConfiguration scaled = config;
      for (double& r : scaled.radii) r *= scale;
      const double expected =
          base * std::pow(scale, static_cast<double>((n - 1) * d));
      CHECK(rel_err(geom::intersection_volume(scaled), expected) < 1e-10);
    }
  }
}

TEST_CASE("volume never decreases when a radius grows") {
  CounterRng rng(2026, 13, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_double() * 3);
    const int d = 1 + static_cast<int>(rng.next_double() * 3);
    geom::BallConfiguration config{d, random_radii(rng, n, 0.5, 1.5)};
    const double base = geom::intersection_volume(config);
    geom::BallConfiguration larger = config;
    const int which = static_cast<int>(rng.next_double() * n);
    larger.radii[which] += rng.next_double();
    CHECK(geom::intersection_volume(larger) >= base * (1.0 - 1e-12));
  }
}

TEST_CASE("feasibility test on known configurations") {
  // Two distant balls.
  CHECK_FALSE(geom::balls_intersect(
      2, std::vector<double>{0.0, 0.0, 3.0, 0.0}, std::vector<double>{1, 1}));
  // Concentric balls.
  CHECK(geom::balls_intersect(
      2, std::vector<double>{0, 0, 0, 0, 0, 0}, std::vector<double>{1, 1, 1}));
  // Pairwise overlapping discs with empty triple intersection.
  const std::vector<double> centers{0.0, 0.0, 1.9, 0.0, 0.95, 1.6};
  const std::vector<double> radii{1.0, 1.0, 1.0};
  CHECK_FALSE(geom::balls_intersect(2, centers, radii));
  CHECK_FALSE(intersect_by_grid_search(2, centers, radii, 0.005));
  // Pull the third disc down until the triple intersection opens up.
  const std::vector<double> centers2{0.0, 0.0, 1.9, 0.0, 0.95, 1.2};
  CHECK(geom::balls_intersect(2, centers2, radii));
  CHECK(intersect_by_grid_search(2, centers2, radii, 0.005));
  CHECK_THROWS_AS(
      geom::balls_intersect(2, std::vector<double>{0.0, 0.0},
                            std::vector<double>{1.0, 1.0}),
      std::invalid_argument);
}

TEST_CASE("disc feasibility agrees with grid search on random triples") {
  CounterRng rng(2026, 14, 0);
  int feasible = 0;
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<double> centers(6);
    for (double& c : centers) c = 3.0 * rng.next_double() - 1.5;
    std::vector<double> radii = random_radii(rng, 3, 0.6, 1.2);
    const bool by_witness = geom::balls_intersect(2, centers, radii);
    const bool by_grid = intersect_by_grid_search(2, centers, radii, 0.004);
    // The grid scan can miss slivers thinner than its step; it never finds
    // a point in an empty intersection.
    if (by_grid) CHECK(by_witness);
    if (!by_witness) CHECK_FALSE(by_grid);
    feasible += by_witness ? 1 : 0;
  }
  CHECK(feasible > 5);
  CHECK(feasible < 60);
}

TEST_CASE("ball feasibility agrees with grid search on random 3d triples") {
  CounterRng rng(2026, 18, 0);
  int feasible = 0;
  int grid_checked = 0;
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<double> centers(9);
    for (double& c : centers) c = 2.4 * rng.next_double() - 1.2;
    std::vector<double> radii = random_radii(rng, 3, 0.6, 1.2);
    const bool by_witness = geom::balls_intersect(3, centers, radii);
    const bool by_grid = intersect_by_grid_search(3, centers, radii, 0.02);
    if (by_grid) {
      CHECK(by_witness);
      ++grid_checked;
    }
    if (!by_witness) CHECK_FALSE(by_grid);
    feasible += by_witness ? 1 : 0;
  }
  CHECK(grid_checked > 0);
  CHECK(feasible < 25);
}

TEST_CASE("projection fallback handles higher dimensions") {
  // The 2d counterexample embedded in 4d: pairwise overlap, empty triple.
  const std::vector<double> centers{0.0, 0.0, 0.0, 0.0,  //
                                    1.9, 0.0, 0.0, 0.0,  //
                                    0.95, 1.6, 0.0, 0.0};
  const std::vector<double> radii{1.0, 1.0, 1.0};
  CHECK_FALSE(geom::balls_intersect(4, centers, radii));
  const std::vector<double> near{0.0, 0.0, 0.0, 0.0,  //
                                 0.4, 0.0, 0.0, 0.0,  //
                                 0.0, 0.4, 0.0, 0.0};
  CHECK(geom::balls_intersect(4, near, radii));
}

TEST_CASE("volume oracle matches closed form") {
  geom::BallConfiguration config{2, {1.0, 1.0}};
  const auto est = geom::intersection_volume_mc(config, 200000, 42, 0);
  CHECK(est.samples == 200000);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.mean - 4.0 * special::kPi) <= 4.0 * est.std_error);

  geom::BallConfiguration triple{2, {1.0, 1.0, 1.0}};
  const auto est3 = geom::intersection_volume_mc(triple, 200000, 43, 0);
  CHECK(std::abs(est3.mean - 9.0 * special::kPi * special::kPi) <=
        4.0 * est3.std_error);
}

TEST_CASE("volume oracle is independent of the worker count") {
  geom::BallConfiguration config{2, {0.8, 1.1, 0.9}};
  const auto a = geom::intersection_volume_mc(config, 50000, 7, 1);
  const auto b = geom::intersection_volume_mc(config, 50000, 7, 2);
  const auto c = geom::intersection_volume_mc(config, 50000, 7, 5);
  CHECK(a.mean == b.mean);
  CHECK(a.mean == c.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("volume oracle rejects tiny sample counts") {
  CHECK_THROWS_AS(geom::intersection_volume_mc({1, {1.0, 1.0}}, 100, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("ball Minkowski functionals") {
  const auto mu1 = geom::ball_minkowski(1, 5.0);
  CHECK(rel_err(mu1[0], 1.0) < 1e-13);
  CHECK(rel_err(mu1[1], 10.0) < 1e-13);

  const auto mu2 = geom::ball_minkowski(2, 1.0);
  CHECK(rel_err(mu2[0], 1.0) < 1e-13);
  CHECK(rel_err(mu2[1], special::kPi) < 1e-13);
  CHECK(rel_err(mu2[2], special::kPi) < 1e-13);

  for (int d = 1; d <= 6; ++d) {
    CHECK(rel_err(geom::ball_minkowski(d, 2.3)[0], 1.0) < 1e-12);
  }
}

TEST_CASE("tube volume of a ball re-sums to the enlarged ball") {
  CounterRng rng(2026, 15, 0);
  for (int d = 1; d <= 6; ++d) {
    for (int rep = 0; rep < 10; ++rep) {
      const double r = 0.2 + 2.0 * rng.next_double();
      const double eps = 0.1 + rng.next_double();
      const auto mu = geom::ball_minkowski(d, r);
      double tube = 0.0;
      for (int j = 0; j <= d; ++j) {
        tube += std::pow(eps, d - j) * special::unit_ball_volume(d - j) *
                mu[j];
      }
      const double direct =
          special::unit_ball_volume(d) * std::pow(r + eps, d);
      CHECK(rel_err(tube, direct) < 1e-12);
    }
  }
}

TEST_CASE("box Minkowski functionals are elementary symmetric polynomials") {
  const auto mu1 = geom::box_minkowski(std::vector<double>{7.0});
  CHECK(mu1 == std::vector<double>{1.0, 7.0});

  const auto mu2 = geom::box_minkowski(std::vector<double>{2.0, 3.0});
  CHECK(rel_err(mu2[0], 1.0) < 1e-14);
  CHECK(rel_err(mu2[1], 5.0) < 1e-14);
  CHECK(rel_err(mu2[2], 6.0) < 1e-14);

  const auto mu3 = geom::box_minkowski(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(rel_err(mu3[1], 3.0) < 1e-14);
  CHECK(rel_err(mu3[2], 3.0) < 1e-14);
  CHECK(rel_err(mu3[3], 1.0) < 1e-14);
}

TEST_CASE("box tube volume matches the Minkowski expansion (MC oracle)") {
  struct Case {
    std::vector<double> sides;
    double eps;
  };
  const Case cases[] = {{{2.0, 3.0}, 0.5}, {{1.0, 1.0, 1.0}, 0.4}};
  int case_idx = 0;
  for (const auto& c : cases) {
    const int d = static_cast<int>(c.sides.size());
    const auto mu = geom::box_minkowski(c.sides);
    double expansion = 0.0;
    for (int j = 0; j <= d; ++j) {
      expansion += std::pow(c.eps, d - j) *
                   special::unit_ball_volume(d - j) * mu[j];
    }
    // Hit-or-miss over the bounding box of the eps-neighborhood.
    const std::int64_t samples = 400000;
    double bounding = 1.0;
    for (double s : c.sides) bounding *= s + 2.0 * c.eps;
    CounterRng rng(99, 16, static_cast<std::uint64_t>(case_idx++));
    std::int64_t hits = 0;
    std::vector<double> y(d);
    for (std::int64_t s = 0; s < samples; ++s) {
      double dist2 = 0.0;
      for (int a = 0; a < d; ++a) {
        y[a] = -c.eps + (c.sides[a] + 2.0 * c.eps) * rng.next_double();
        const double excess = std::max({0.0, -y[a], y[a] - c.sides[a]});
        dist2 += excess * excess;
      }
      if (dist2 <= c.eps * c.eps) ++hits;
    }
    const double p = static_cast<double>(hits) / samples;
    const double estimate = bounding * p;
    const double se = bounding * std::sqrt(p * (1.0 - p) / samples);
    CHECK(std::abs(estimate - expansion) <= 4.0 * se);
  }
}

TEST_CASE("domain construction") {
  const auto interval = geom::DomainSpec::interval(10.0);
  CHECK(interval.dim == 1);
  CHECK(interval.minkowski == std::vector<double>{1.0, 10.0});
  CHECK(interval.volume() == 10.0);

  const auto box = geom::DomainSpec::box(std::vector<double>{2.0, 3.0});
  CHECK(box.kind == geom::DomainKind::box);
  CHECK(box.volume() == doctest::Approx(6.0));

  const auto ball = geom::DomainSpec::ball(2, 1.0);
  CHECK(ball.volume() == doctest::Approx(special::kPi));

  CHECK_THROWS_AS(geom::DomainSpec::interval(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(geom::DomainSpec::ball(2, 0.0), std::invalid_argument);
}

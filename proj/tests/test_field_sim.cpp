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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "field_sim.hpp"
#include "special_functions.hpp"

namespace sim = conjprob::sim;
namespace geom = conjprob::geom;
namespace special = conjprob::special;
using conjprob::CounterRng;

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= static_cast<double>(xs.size() - 1);
  return m;
}

double correlation(const std::vector<double>& xs,
                   const std::vector<double>& ys) {
  const Moments mx = moments(xs);
  const Moments my = moments(ys);
  double cov = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx.mean) * (ys[i] - my.mean);
  }
  cov /= static_cast<double>(xs.size() - 1);
  return cov / std::sqrt(mx.variance * my.variance);
}

}  // namespace

TEST_CASE("covariance model") {
  CHECK(sim::covariance(std::vector<double>{0.0}) == 1.0);
  CHECK(sim::covariance(std::vector<double>{1.0}) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(sim::covariance(std::vector<double>{3.0, 4.0}) ==
        doctest::Approx(std::exp(-12.5)).epsilon(1e-12));
}

TEST_CASE("single-point marginals over many draws") {
  sim::FieldSampler sampler(1, {0.0});
  CHECK(sampler.method() == sim::FieldSampler::Method::dense_cholesky);
  CHECK(std::abs(sampler.realized_covariance(std::vector<double>{0.0}) - 1.0) <
        1e-9);
  const int n = 100000;
  CounterRng rng(5, 0, 0);
  std::vector<double> draws(n);
  std::vector<double> buf(1);
  for (int i = 0; i < n; ++i) {
    sampler.draw(rng, buf);
    draws[i] = buf[0];
  }
  const Moments m = moments(draws);
  CHECK(std::abs(m.mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(m.variance - 1.0) <
        4.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("pair correlations at short and long lags") {
  const int n = 100000;

  sim::FieldSampler near(1, {0.0, 1.0});
  CounterRng rng_near(6, 0, 0);
  std::vector<double> a(n), b(n), buf(2);
  for (int i = 0; i < n; ++i) {
    near.draw(rng_near, buf);
    a[i] = buf[0];
    b[i] = buf[1];
  }
  const double rho = std::exp(-0.5);
  CHECK(std::abs(correlation(a, b) - rho) <
        4.0 * (1.0 - rho * rho) / std::sqrt(static_cast<double>(n)));

  sim::FieldSampler far(1, {0.0, 10.0});
  CounterRng rng_far(7, 0, 0);
  for (int i = 0; i < n; ++i) {
    far.draw(rng_far, buf);
    a[i] = buf[0];
    b[i] = buf[1];
  }
  CHECK(std::abs(correlation(a, b)) <
        4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("grid marginals at every point") {
  const std::vector<double> grid{0.0, 0.35, 0.7, 1.4, 2.8};
  sim::FieldSampler sampler(1, grid);
  const int n = 100000;
  CounterRng rng(8, 0, 0);
  std::vector<std::vector<double>> per_point(grid.size());
  std::vector<double> buf(grid.size());
  for (int i = 0; i < n; ++i) {
    sampler.draw(rng, buf);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      per_point[p].push_back(buf[p]);
    }
  }
  for (const auto& xs : per_point) {
    const Moments m = moments(xs);
    CHECK(std::abs(m.mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(m.variance - 1.0) <
          4.0 * std::sqrt(2.0 / static_cast<double>(n)));
  }
}

TEST_CASE("spectral synthesis reproduces the covariance to 1e-6") {
  // Force the spectral path on a small grid; the realized covariance is a
  // deterministic mode sum.
  sim::FieldSampler sampler(1, {0.0, 1.0},
                            sim::FieldSampler::Method::spectral);
  CHECK(sampler.method() == sim::FieldSampler::Method::spectral);
  for (double lag = 0.0; lag <= 20.0; lag += 0.5) {
    const double model = std::exp(-0.5 * lag * lag);
    const double realized =
        sampler.realized_covariance(std::vector<double>{lag});
    CHECK(std::abs(realized - model) < 1e-6);
  }

  sim::FieldSampler plane(2, {0.0, 0.0, 1.0, 1.0},
                          sim::FieldSampler::Method::spectral);
  const double lags[][2] = {{0.0, 0.0}, {0.7, -0.3}, {2.0, 1.0}, {8.0, 8.0}};
  for (const auto& lag : lags) {
    const double model = sim::covariance(std::vector<double>{lag[0], lag[1]});
    const double realized =
        plane.realized_covariance(std::vector<double>{lag[0], lag[1]});
    CHECK(std::abs(realized - model) < 1e-6);
  }
}

TEST_CASE("spectral draws have the right marginals") {
  sim::FieldSampler sampler(1, {0.0, 0.8},
                            sim::FieldSampler::Method::spectral);
  const int n = 2000;
  CounterRng rng(9, 0, 0);
  std::vector<double> a(n), b(n), buf(2);
  for (int i = 0; i < n; ++i) {
    sampler.draw(rng, buf);
    a[i] = buf[0];
    b[i] = buf[1];
  }
  const Moments m = moments(a);
  CHECK(std::abs(m.mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(m.variance - 1.0) <
        4.0 * std::sqrt(2.0 / static_cast<double>(n)));
  const double rho = std::exp(-0.5 * 0.64);
  CHECK(std::abs(correlation(a, b) - rho) <
        4.0 * (1.0 - rho * rho) / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("one-shot field sampling is seed-deterministic") {
  sim::FieldModel model{1};
  const std::vector<double> grid{0.0, 0.5, 1.0, 1.5};
  const auto a = sim::sample_field(model, grid, 123);
  const auto b = sim::sample_field(model, grid, 123);
  const auto c = sim::sample_field(model, grid, 124);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.size() == grid.size());
}

TEST_CASE("sampler rejects oversized boxes") {
  CHECK_THROWS_AS(sim::FieldSampler(1, {0.0, 150.0}), std::length_error);
  CHECK_THROWS_AS(sim::FieldSampler(2, {0.0, 0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("conjunction probability at an unreachable threshold") {
  sim::SimulationPlan plan;
  plan.n_fields = 1;
  plan.domain = geom::DomainSpec::interval(5.0);
  plan.grid_step = 0.1;
  plan.u = -10.0;
  plan.replicates = 1000;
  plan.seed = 3;
  const auto est = sim::conjunction_probability_mc(plan);
  CHECK(est.mean == 1.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("more fields make the conjunction rarer") {
  sim::SimulationPlan plan;
  plan.domain = geom::DomainSpec::interval(10.0);
  plan.grid_step = 0.05;
  plan.u = 1.5;
  plan.replicates = 2000;
  plan.seed = 17;

  plan.n_fields = 1;
  const auto single = sim::conjunction_probability_mc(plan);
  plan.n_fields = 2;
  const auto pair = sim::conjunction_probability_mc(plan);
  CHECK(pair.mean <
        single.mean + 2.0 * (single.std_error + pair.std_error));
  CHECK(pair.mean < single.mean);  // far apart at these settings
}

TEST_CASE("simulation hit counts do not depend on the worker count") {
  sim::SimulationPlan plan;
  plan.n_fields = 2;
  plan.domain = geom::DomainSpec::interval(5.0);
  plan.grid_step = 0.1;
  plan.u = 1.0;
  plan.replicates = 1000;
  plan.seed = 29;

  plan.workers = 1;
  const auto a = sim::conjunction_probability_mc(plan);
  plan.workers = 3;
  const auto b = sim::conjunction_probability_mc(plan);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("simulation plan validation") {
  sim::SimulationPlan plan;
  plan.domain = geom::DomainSpec::interval(5.0);
  plan.grid_step = 0.5;
  plan.replicates = 1000;
  CHECK_THROWS_AS(sim::conjunction_probability_mc(plan),
                  std::invalid_argument);
  plan.grid_step = 0.1;
  plan.replicates = 10;
  CHECK_THROWS_AS(sim::conjunction_probability_mc(plan),
                  std::invalid_argument);
  plan.replicates = 1000;
  plan.domain = geom::DomainSpec::ball(2, 1.0);
  CHECK_THROWS_AS(sim::conjunction_probability_mc(plan),
                  std::invalid_argument);
}

TEST_CASE("pickands estimates approach n over sqrt(2 pi)") {
  sim::PickandsPlan plan;
  plan.grid_spacing = 0.02;
  plan.t_max = 12.0;
  plan.samples = 200000;
  plan.seed = 101;
  for (int n = 1; n <= 3; ++n) {
    plan.n_fields = n;
    const auto est = sim::pickands_constant_mc(plan);
    const double target = n / std::sqrt(special::kTwoPi);
    CHECK(std::abs(est.mean - target) / target < 0.15);
    CHECK(est.std_error > 0.0);
  }
}

TEST_CASE("pickands estimate grows with the number of fields") {
  sim::PickandsPlan plan;
  plan.grid_spacing = 0.02;
  plan.t_max = 12.0;
  plan.samples = 100000;
  plan.seed = 102;
  double previous = 0.0;
  double previous_se = 0.0;
  for (int n = 1; n <= 4; ++n) {
    plan.n_fields = n;
    const auto est = sim::pickands_constant_mc(plan);
    CHECK(est.mean > previous - 2.0 * (est.std_error + previous_se));
    previous = est.mean;
    previous_se = est.std_error;
  }
}

TEST_CASE("pickands scan horizon is long enough") {
  sim::PickandsPlan plan;
  plan.n_fields = 2;
  plan.grid_spacing = 0.02;
  plan.samples = 100000;
  plan.seed = 103;

  plan.t_max = 12.0;
  const auto short_scan = sim::pickands_constant_mc(plan);
  plan.t_max = 16.0;
  const auto long_scan = sim::pickands_constant_mc(plan);
  CHECK(std::abs(long_scan.mean - short_scan.mean) <=
        short_scan.std_error);
}

TEST_CASE("pickands estimate is stable under grid refinement") {
  sim::PickandsPlan plan;
  plan.n_fields = 2;
  plan.t_max = 12.0;
  plan.samples = 100000;
  plan.seed = 104;

  plan.grid_spacing = 0.02;
  const auto coarse = sim::pickands_constant_mc(plan);
  plan.grid_spacing = 0.01;
  const auto fine = sim::pickands_constant_mc(plan);
  CHECK(std::abs(fine.mean - coarse.mean) <=
        2.0 * (coarse.std_error + fine.std_error));
}

TEST_CASE("pickands determinism across workers") {
  sim::PickandsPlan plan;
  plan.n_fields = 2;
  plan.grid_spacing = 0.05;
  plan.t_max = 12.0;
  plan.samples = 50000;
  plan.seed = 105;
  plan.workers = 1;
  const auto a = sim::pickands_constant_mc(plan);
  plan.workers = 4;
  const auto b = sim::pickands_constant_mc(plan);
  CHECK(a.mean == b.mean);
}

TEST_CASE("pickands plan validation") {
  sim::PickandsPlan plan;
  plan.n_fields = 1;
  plan.grid_spacing = 0.2;
  CHECK_THROWS_AS(sim::pickands_constant_mc(plan), std::invalid_argument);
  plan.grid_spacing = 0.02;
  plan.t_max = 5.0;  // 25 < 6 sqrt(2) * 5 + 10
  CHECK_THROWS_AS(sim::pickands_constant_mc(plan), std::invalid_argument);
}

TEST_CASE("single-field empirical probability matches the EC prediction") {
  // With one field the EC approximation of the supremum tail is sharp, so
  // the simulation should reproduce it within Monte Carlo resolution.
  sim::SimulationPlan plan;
  plan.n_fields = 1;
  plan.domain = geom::DomainSpec::interval(10.0);
  plan.grid_step = 0.05;
  plan.u = 3.0;
  plan.replicates = 20000;
  plan.seed = 55;
  const auto est = sim::conjunction_probability_mc(plan);
  const double tail = special::gaussian_tail(3.0);
  const double predicted =
      tail + 10.0 * special::gaussian_pdf(3.0) / std::sqrt(special::kTwoPi);
  CHECK(std::abs(est.mean - predicted) <= 4.0 * est.std_error);
}

TEST_CASE("comparison table against the asymptotic expansion") {
  sim::SimulationPlan plan;
  plan.n_fields = 2;
  plan.domain = geom::DomainSpec::interval(10.0);
  plan.grid_step = 0.1;
  plan.replicates = 2000;
  plan.seed = 77;

  CHECK(sim::compare_with_asymptotic(plan, std::vector<double>{}).empty());

  const std::vector<double> u_grid{1.0, 1.5};
  const auto rows = sim::compare_with_asymptotic(plan, u_grid);
  REQUIRE(rows.size() == 2);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    CHECK(rows[j].u == u_grid[j]);
    CHECK(rows[j].asymptotic > 0.0);
    CHECK(rows[j].ratio ==
          doctest::Approx(rows[j].empirical / rows[j].asymptotic));
  }
  CHECK(rows[1].empirical <= rows[0].empirical);
}

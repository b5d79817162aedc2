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

#include "field_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "asymptotics.hpp"
#include "parallel.hpp"
#include "special_functions.hpp"

namespace conjprob::sim {

namespace {

constexpr std::int64_t kDensePointLimit = 3000;
constexpr double kJitter = 1e-10;
constexpr double kFrequencyCutoff = 8.0;
constexpr double kMaxBoxSide = 100.0;
constexpr std::int64_t kMaxGridPoints = 2000000;

// Midpoint frequency grids: the synthesis covariance equals the model
// covariance up to the spectral mass beyond the cutoff (~1e-15) plus alias
// images at lag 2*pi/spacing. 2048 modes per axis put the first image at
// lag ~1608; the tensor grid in higher dimensions uses 256 per axis, image
// at lag ~201, still past the diameter of any admissible box. Either way
// the covariance error stays below 1e-6 at every supported lag.
int modes_for_dim(int dim) { return dim == 1 ? 2048 : 256; }

std::int64_t int_pow(std::int64_t base, int exponent) {
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace

double covariance(std::span<const double> lag) {
  double sq = 0.0;
  for (double x : lag) sq += x * x;
  return std::exp(-0.5 * sq);
}

FieldSampler::FieldSampler(int dim, std::vector<double> grid)
    : dim_(dim), grid_(std::move(grid)) {
  if (dim_ < 1 || grid_.empty() || grid_.size() % dim_ != 0) {
    throw std::invalid_argument("FieldSampler: grid size not a multiple of dim");
  }
  n_points_ = static_cast<std::int64_t>(grid_.size()) / dim_;
  if (n_points_ > kMaxGridPoints) {
    throw std::length_error("FieldSampler: grid exceeds supported point count");
  }
  for (int a = 0; a < dim_; ++a) {
    double lo = grid_[a];
    double hi = grid_[a];
    for (std::int64_t p = 1; p < n_points_; ++p) {
      lo = std::min(lo, grid_[p * dim_ + a]);
      hi = std::max(hi, grid_[p * dim_ + a]);
    }
    if (hi - lo > kMaxBoxSide) {
      throw std::length_error(
          "FieldSampler: grid extent exceeds the supported box side");
    }
  }
  method_ = n_points_ <= kDensePointLimit ? Method::dense_cholesky
                                          : Method::spectral;
  if (method_ == Method::dense_cholesky) {
    build_dense();
  } else {
    build_spectral();
  }
}

FieldSampler::FieldSampler(int dim, std::vector<double> grid, Method method)
    : FieldSampler(dim, std::move(grid)) {
  if (method != method_) {
    method_ = method;
    chol_.clear();
    axis_freq_.clear();
    axis_weight_.clear();
    if (method_ == Method::dense_cholesky) {
      build_dense();
    } else {
      build_spectral();
    }
  }
}

void FieldSampler::build_dense() {
  const std::int64_t n = n_points_;
  chol_.assign(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> lag(dim_);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j <= i; ++j) {
      for (int a = 0; a < dim_; ++a) {
        lag[a] = grid_[i * dim_ + a] - grid_[j * dim_ + a];
      }
      double c = covariance(lag);
      if (i == j) c += kJitter;
      chol_[static_cast<std::size_t>(i) * n + j] = c;
    }
  }
  // In-place lower Cholesky.
  for (std::int64_t i = 0; i < n; ++i) {
    double* row_i = &chol_[static_cast<std::size_t>(i) * n];
    for (std::int64_t j = 0; j <= i; ++j) {
      const double* row_j = &chol_[static_cast<std::size_t>(j) * n];
      double s = row_i[j];
      for (std::int64_t k = 0; k < j; ++k) s -= row_i[k] * row_j[k];
      if (i == j) {
        if (!(s > 0.0)) {
          throw std::runtime_error(
              "FieldSampler: covariance factorization failed");
        }
        row_i[j] = std::sqrt(s);
      } else {
        row_i[j] = s / row_j[j];
      }
    }
  }
}

void FieldSampler::build_spectral() {
  modes_per_axis_ = modes_for_dim(dim_);
  const double dw = kFrequencyCutoff / modes_per_axis_;
  axis_freq_.resize(modes_per_axis_);
  axis_weight_.resize(modes_per_axis_);
  for (int m = 0; m < modes_per_axis_; ++m) {
    axis_freq_[m] = (m + 0.5) * dw;
    axis_weight_[m] = special::gaussian_pdf(axis_freq_[m]) * dw;
  }
}

void FieldSampler::draw(CounterRng& rng, std::span<double> out) const {
  if (static_cast<std::int64_t>(out.size()) != n_points_) {
    throw std::invalid_argument("FieldSampler: output size mismatch");
  }
  std::vector<double> buffer;
  draw_many(rng, 1, buffer);
  std::copy(buffer.begin(), buffer.end(), out.begin());
}

void FieldSampler::draw_many(CounterRng& rng, int n_fields,
                             std::vector<double>& out) const {
  if (n_fields < 1) {
    throw std::invalid_argument("FieldSampler: n_fields must be >= 1");
  }
  const std::int64_t n = n_points_;
  out.assign(static_cast<std::size_t>(n) * n_fields, 0.0);

  if (method_ == Method::dense_cholesky) {
    // Point-major normals so the inner accumulation is contiguous.
    std::vector<double> z(static_cast<std::size_t>(n) * n_fields);
    for (std::int64_t p = 0; p < n; ++p) {
      for (int f = 0; f < n_fields; ++f) {
        z[p * n_fields + f] = rng.next_gaussian();
      }
    }
    if (n_fields == 1) {
      for (std::int64_t i = 0; i < n; ++i) {
        const double* lrow = &chol_[static_cast<std::size_t>(i) * n];
        double acc = 0.0;
        for (std::int64_t j = 0; j <= i; ++j) acc += lrow[j] * z[j];
        out[i] = acc;
      }
    } else if (n_fields == 2) {
      for (std::int64_t i = 0; i < n; ++i) {
        const double* lrow = &chol_[static_cast<std::size_t>(i) * n];
        double a0 = 0.0;
        double a1 = 0.0;
        for (std::int64_t j = 0; j <= i; ++j) {
          const double lij = lrow[j];
          a0 += lij * z[2 * j];
          a1 += lij * z[2 * j + 1];
        }
        out[2 * i] = a0;
        out[2 * i + 1] = a1;
      }
    } else {
      std::vector<double> acc(n_fields);
      for (std::int64_t i = 0; i < n; ++i) {
        const double* lrow = &chol_[static_cast<std::size_t>(i) * n];
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::int64_t j = 0; j <= i; ++j) {
          const double lij = lrow[j];
          const double* zj = &z[j * n_fields];
          for (int f = 0; f < n_fields; ++f) acc[f] += lij * zj[f];
        }
        for (int f = 0; f < n_fields; ++f) out[i * n_fields + f] = acc[f];
      }
    }
    return;
  }

  // Spectral path: X(t) = sum_modes sigma (A cos<w,t> + B sin<w,t>).
  const int d = dim_;
  const std::int64_t axis_modes = int_pow(modes_per_axis_, d);
  const int sign_patterns = 1 << (d - 1);
  std::vector<int> midx(d);
  std::vector<double> omega(d);
  std::vector<double> coeff_a(n_fields);
  std::vector<double> coeff_b(n_fields);
  for (std::int64_t flat = 0; flat < axis_modes; ++flat) {
    std::int64_t rest = flat;
    double sigma2 = 2.0;
    for (int a = 0; a < d; ++a) {
      midx[a] = static_cast<int>(rest % modes_per_axis_);
      rest /= modes_per_axis_;
      sigma2 *= axis_weight_[midx[a]];
    }
    const double sigma = std::sqrt(sigma2);
    for (int pat = 0; pat < sign_patterns; ++pat) {
      omega[0] = axis_freq_[midx[0]];
      for (int a = 1; a < d; ++a) {
        omega[a] = ((pat >> (a - 1)) & 1) ? -axis_freq_[midx[a]]
                                          : axis_freq_[midx[a]];
      }
      for (int f = 0; f < n_fields; ++f) {
        coeff_a[f] = sigma * rng.next_gaussian();
        coeff_b[f] = sigma * rng.next_gaussian();
      }
      for (std::int64_t p = 0; p < n_points_; ++p) {
        double phase = 0.0;
        for (int a = 0; a < d; ++a) phase += omega[a] * grid_[p * d + a];
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        double* o = &out[p * n_fields];
        for (int f = 0; f < n_fields; ++f) {
          o[f] += coeff_a[f] * c + coeff_b[f] * s;
        }
      }
    }
  }
}

double FieldSampler::realized_covariance(std::span<const double> lag) const {
  if (static_cast<int>(lag.size()) != dim_) {
    throw std::invalid_argument("FieldSampler: lag dimension mismatch");
  }
  if (method_ == Method::dense_cholesky) {
    bool zero_lag = true;
    for (double x : lag) zero_lag = zero_lag && x == 0.0;
    return covariance(lag) + (zero_lag ? kJitter : 0.0);
  }
  const int d = dim_;
  const std::int64_t axis_modes = int_pow(modes_per_axis_, d);
  const int sign_patterns = 1 << (d - 1);
  std::vector<int> midx(d);
  double sum = 0.0;
  for (std::int64_t flat = 0; flat < axis_modes; ++flat) {
    std::int64_t rest = flat;
    double sigma2 = 2.0;
    for (int a = 0; a < d; ++a) {
      midx[a] = static_cast<int>(rest % modes_per_axis_);
      rest /= modes_per_axis_;
      sigma2 *= axis_weight_[midx[a]];
    }
    for (int pat = 0; pat < sign_patterns; ++pat) {
      double phase = axis_freq_[midx[0]] * lag[0];
      for (int a = 1; a < d; ++a) {
        const double w = ((pat >> (a - 1)) & 1) ? -axis_freq_[midx[a]]
                                                : axis_freq_[midx[a]];
        phase += w * lag[a];
      }
      sum += sigma2 * std::cos(phase);
    }
  }
  return sum;
}

std::vector<double> sample_field(const FieldModel& model,
                                 std::span<const double> grid_points,
                                 std::uint64_t seed) {
  FieldSampler sampler(model.dim,
                       std::vector<double>(grid_points.begin(),
                                           grid_points.end()));
  CounterRng rng(seed, kStreamFieldDraw, 0);
  std::vector<double> out(sampler.point_count());
  sampler.draw(rng, out);
  return out;
}

namespace {

std::vector<double> make_grid(const geom::DomainSpec& domain, double step) {
  if (domain.kind == geom::DomainKind::ball) {
    throw std::invalid_argument(
        "simulation: domain must be an interval or a box");
  }
  const int d = domain.dim;
  std::vector<std::int64_t> counts(d);
  std::int64_t total = 1;
  for (int a = 0; a < d; ++a) {
    counts[a] =
        static_cast<std::int64_t>(std::floor(domain.parameters[a] / step +
                                             1e-9)) +
        1;
    total *= counts[a];
    if (total > kMaxGridPoints) {
      throw std::length_error("simulation: grid exceeds supported point count");
    }
  }
  std::vector<double> grid(static_cast<std::size_t>(total) * d);
  for (std::int64_t p = 0; p < total; ++p) {
    std::int64_t rest = p;
    for (int a = 0; a < d; ++a) {
      grid[p * d + a] = static_cast<double>(rest % counts[a]) * step;
      rest /= counts[a];
    }
  }
  return grid;
}

}  // namespace

void SimulationPlan::validate() const {
  if (n_fields < 1) {
    throw std::invalid_argument("SimulationPlan: n must be >= 1");
  }
  if (!(grid_step > 0.0) || grid_step > 0.1) {
    throw std::invalid_argument(
        "SimulationPlan: grid_step must lie in (0, 0.1]");
  }
  if (replicates < 1000) {
    throw std::invalid_argument("SimulationPlan: replicates must be >= 1000");
  }
  if (domain.kind == geom::DomainKind::ball) {
    throw std::invalid_argument(
        "SimulationPlan: domain must be an interval or a box");
  }
}

namespace {

// Shared driver: per replicate, the grid sup of the pointwise min over the
// n field copies, scored against each threshold. Replicate r draws from the
// stream (seed, kStreamConjunctionMc, r) regardless of chunk or worker.
std::vector<std::int64_t> count_threshold_hits(const SimulationPlan& plan,
                                               std::span<const double> u_grid) {
  const std::vector<double> grid = make_grid(plan.domain, plan.grid_step);
  const FieldSampler sampler(plan.domain.dim, grid);
  const std::int64_t n_pts = sampler.point_count();
  const int n_fields = plan.n_fields;
  const int n_u = static_cast<int>(u_grid.size());

  constexpr std::int64_t kChunk = 64;
  const std::int64_t n_chunks = (plan.replicates + kChunk - 1) / kChunk;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(n_chunks) * n_u, 0);

  parallel_chunks(
      plan.replicates, kChunk, plan.workers,
      [&](std::int64_t chunk, std::int64_t lo, std::int64_t hi) {
        std::vector<double> fields;
        std::int64_t* chunk_hits = &hits[static_cast<std::size_t>(chunk) * n_u];
        for (std::int64_t rep = lo; rep < hi; ++rep) {
          CounterRng rng(plan.seed, kStreamConjunctionMc,
                         static_cast<std::uint64_t>(rep));
          sampler.draw_many(rng, n_fields, fields);
          double sup_min = -std::numeric_limits<double>::infinity();
          for (std::int64_t p = 0; p < n_pts; ++p) {
            const double* v = &fields[p * n_fields];
            double m = v[0];
            for (int f = 1; f < n_fields; ++f) m = std::min(m, v[f]);
            sup_min = std::max(sup_min, m);
          }
          for (int j = 0; j < n_u; ++j) {
            if (sup_min >= u_grid[j]) ++chunk_hits[j];
          }
        }
      });

  std::vector<std::int64_t> totals(n_u, 0);
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    for (int j = 0; j < n_u; ++j) {
      totals[j] += hits[static_cast<std::size_t>(c) * n_u + j];
    }
  }
  return totals;
}

}  // namespace

EstimateWithCI conjunction_probability_mc(const SimulationPlan& plan) {
  plan.validate();
  const double u = plan.u;
  const std::vector<std::int64_t> totals =
      count_threshold_hits(plan, std::span<const double>(&u, 1));
  const double r = static_cast<double>(plan.replicates);
  const double p = static_cast<double>(totals[0]) / r;
  EstimateWithCI est;
  est.mean = p;
  est.std_error = std::sqrt(p * (1.0 - p) / r);
  est.samples = plan.replicates;
  est.seed = plan.seed;
  return est;
}

std::vector<ComparisonRow> compare_with_asymptotic(
    const SimulationPlan& plan, std::span<const double> u_grid) {
  plan.validate();
  if (u_grid.empty()) return {};
  for (double u : u_grid) {
    if (!(u > 0.0)) {
      throw std::invalid_argument(
          "compare_with_asymptotic: thresholds must be > 0");
    }
  }
  const std::vector<std::int64_t> totals = count_threshold_hits(plan, u_grid);
  const double r = static_cast<double>(plan.replicates);
  std::vector<ComparisonRow> rows(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j) {
    const double p = static_cast<double>(totals[j]) / r;
    rows[j].u = u_grid[j];
    rows[j].empirical = p;
    rows[j].std_error = std::sqrt(p * (1.0 - p) / r);
    rows[j].asymptotic = asym::conjunction_probability(
        plan.n_fields, plan.domain.dim, u_grid[j], plan.domain.volume());
    rows[j].ratio = rows[j].empirical / rows[j].asymptotic;
  }
  return rows;
}

void PickandsPlan::validate() const {
  if (n_fields < 1) {
    throw std::invalid_argument("PickandsPlan: n must be >= 1");
  }
  if (!(grid_spacing > 0.0) || grid_spacing > 0.1) {
    throw std::invalid_argument("PickandsPlan: a must lie in (0, 0.1]");
  }
  if (!(t_max * t_max > 6.0 * special::kSqrtTwo * t_max + 10.0)) {
    throw std::invalid_argument(
        "PickandsPlan: t_max too small to capture the running maximum");
  }
  if (samples < 1) {
    throw std::invalid_argument("PickandsPlan: samples must be >= 1");
  }
}

EstimateWithCI pickands_constant_mc(const PickandsPlan& plan) {
  plan.validate();
  const int n = plan.n_fields;
  const double a = plan.grid_spacing;
  const std::int64_t n_steps =
      static_cast<std::int64_t>(std::floor(plan.t_max / a + 1e-9));

  constexpr std::int64_t kChunk = 1 << 14;
  const std::int64_t n_chunks = (plan.samples + kChunk - 1) / kChunk;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(n_chunks), 0);

  parallel_chunks(
      plan.samples, kChunk, plan.workers,
      [&](std::int64_t chunk, std::int64_t lo, std::int64_t hi) {
        std::vector<double> xi(n);
        std::vector<double> shift(n);
        std::int64_t h = 0;
        for (std::int64_t s = lo; s < hi; ++s) {
          CounterRng rng(plan.seed, kStreamPickandsMc,
                         static_cast<std::uint64_t>(s));
          for (int f = 0; f < n; ++f) {
            xi[f] = special::kSqrtTwo * rng.next_gaussian();
          }
          for (int f = 0; f < n; ++f) shift[f] = rng.next_exponential();
          // max_k Z(a k) <= 0 iff no grid point has a positive minimum; a
          // single positive value ends the scan.
          bool all_below = true;
          for (std::int64_t k = 1; k <= n_steps; ++k) {
            const double t = static_cast<double>(k) * a;
            double z = xi[0] * t - t * t + shift[0];
            for (int f = 1; f < n; ++f) {
              z = std::min(z, xi[f] * t - t * t + shift[f]);
            }
            if (z > 0.0) {
              all_below = false;
              break;
            }
          }
          if (all_below) ++h;
        }
        hits[static_cast<std::size_t>(chunk)] = h;
      });

  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  const double m = static_cast<double>(plan.samples);
  const double p = static_cast<double>(total) / m;
  // The scan statistic uses the |ts|-covariance representation, whose
  // (1/a) P(max <= 0) limit is the constant for correlation decay 1 - t^2.
  // Unit-gradient-variance fields decay as 1 - t^2/2; substituting
  // t -> sqrt(2) t shows their constant is 1/sqrt(2) times that limit.
  const double scale = 1.0 / (a * special::kSqrtTwo);
  EstimateWithCI est;
  est.mean = p * scale;
  est.std_error = std::sqrt(p * (1.0 - p) / m) * scale;
  est.samples = plan.samples;
  est.seed = plan.seed;
  return est;
}

}  // namespace conjprob::sim

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

#include "ball_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "special_functions.hpp"

namespace conjprob::geom {

namespace {

constexpr double kFeasibilityTol = 1e-9;
constexpr int kMaxSweeps = 500;
// A sweep that moves the iterate less than this has settled on a limit
// cycle; further sweeps cannot reach feasibility.
constexpr double kCycleTol = 1e-13;

double ipow(double base, int exponent) {
  double r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

// Membership with a tiny slack: witness candidates sit exactly on sphere
// boundaries, so strict comparisons would reject them through rounding.
bool point_in_all(const double* y, int dim, std::span<const double> centers,
                  std::span<const double> radii, double slack) {
  const int n = static_cast<int>(radii.size());
  for (int i = 0; i < n; ++i) {
    double dist2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double delta = y[a] - centers[i * dim + a];
      dist2 += delta * delta;
    }
    const double reach = radii[i] + slack;
    if (dist2 > reach * reach) return false;
  }
  return true;
}

// Exact decision for discs. A nonempty intersection, if it is not a full
// disc (center witness), has a boundary of circular arcs whose transition
// points are circle-circle intersections lying in every disc.
bool discs_intersect_exact(std::span<const double> centers,
                           std::span<const double> radii, double slack) {
  const int n = static_cast<int>(radii.size());
  for (int i = 0; i < n; ++i) {
    if (point_in_all(&centers[2 * i], 2, centers, radii, slack)) return true;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double ux = centers[2 * j] - centers[2 * i];
      const double uy = centers[2 * j + 1] - centers[2 * i + 1];
      const double dist2 = ux * ux + uy * uy;
      if (dist2 <= 0.0) continue;
      const double dist = std::sqrt(dist2);
      const double along =
          (dist2 + radii[i] * radii[i] - radii[j] * radii[j]) / (2.0 * dist);
      const double off2 = radii[i] * radii[i] - along * along;
      if (off2 < 0.0) continue;  // contained or disjoint: no circle points
      const double off = std::sqrt(off2);
      const double bx = centers[2 * i] + along * ux / dist;
      const double by = centers[2 * i + 1] + along * uy / dist;
      const double px = -uy / dist;
      const double py = ux / dist;
      const double cand[2][2] = {{bx + off * px, by + off * py},
                                 {bx - off * px, by - off * py}};
      for (const auto& y : cand) {
        if (point_in_all(y, 2, centers, radii, slack)) return true;
      }
    }
  }
  return false;
}

// Exact decision for balls in R^3: witnesses are centers, triple-sphere
// vertices, and (for full-circle edges) points of pairwise intersection
// circles. Degenerate configurations fall through to a negative answer,
// which only affects a measure-zero set of sampled configurations.
bool balls3_intersect_exact(std::span<const double> centers,
                            std::span<const double> radii, double slack) {
  const int n = static_cast<int>(radii.size());
  for (int i = 0; i < n; ++i) {
    if (point_in_all(&centers[3 * i], 3, centers, radii, slack)) return true;
  }

  // Pairwise intersection circles; keep their frames for the triple stage.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double u[3];
      double dist2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        u[a] = centers[3 * j + a] - centers[3 * i + a];
        dist2 += u[a] * u[a];
      }
      if (dist2 <= 0.0) continue;
      const double dist = std::sqrt(dist2);
      const double along =
          (dist2 + radii[i] * radii[i] - radii[j] * radii[j]) / (2.0 * dist);
      const double h2 = radii[i] * radii[i] - along * along;
      if (h2 < 0.0) continue;
      const double h = std::sqrt(h2);
      double q[3];
      for (int a = 0; a < 3; ++a) {
        q[a] = centers[3 * i + a] + along * u[a] / dist;
      }
      // Closest point of the circle to each remaining center.
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        double v[3];
        double v_dot_u = 0.0;
        for (int a = 0; a < 3; ++a) {
          v[a] = centers[3 * k + a] - q[a];
          v_dot_u += v[a] * u[a] / dist;
        }
        double perp[3];
        double perp2 = 0.0;
        for (int a = 0; a < 3; ++a) {
          perp[a] = v[a] - v_dot_u * u[a] / dist;
          perp2 += perp[a] * perp[a];
        }
        if (perp2 < 1e-30) continue;
        const double inv = h / std::sqrt(perp2);
        double y[3];
        for (int a = 0; a < 3; ++a) y[a] = q[a] + perp[a] * inv;
        if (point_in_all(y, 3, centers, radii, slack)) return true;
      }
    }
  }

  // Triple-sphere vertices.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        double u[3], v[3];
        double uu = 0.0, vv = 0.0, uv = 0.0;
        for (int a = 0; a < 3; ++a) {
          u[a] = centers[3 * j + a] - centers[3 * i + a];
          v[a] = centers[3 * k + a] - centers[3 * i + a];
          uu += u[a] * u[a];
          vv += v[a] * v[a];
          uv += u[a] * v[a];
        }
        const double bu = 0.5 * (uu + radii[i] * radii[i] -
                                 radii[j] * radii[j]);
        const double bv = 0.5 * (vv + radii[i] * radii[i] -
                                 radii[k] * radii[k]);
        const double det = uu * vv - uv * uv;
        if (det <= 1e-14 * uu * vv) continue;  // collinear centers
        const double alpha = (bu * vv - bv * uv) / det;
        const double beta = (bv * uu - bu * uv) / det;
        double y0[3];
        double y0_norm2 = 0.0;
        for (int a = 0; a < 3; ++a) {
          y0[a] = alpha * u[a] + beta * v[a];
          y0_norm2 += y0[a] * y0[a];
        }
        double w[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                       u[0] * v[1] - u[1] * v[0]};
        const double w2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
        const double t2 = (radii[i] * radii[i] - y0_norm2) / w2;
        if (t2 < 0.0 || w2 <= 0.0) continue;
        const double t = std::sqrt(t2);
        for (double sign : {1.0, -1.0}) {
          double y[3];
          for (int a = 0; a < 3; ++a) {
            y[a] = centers[3 * i + a] + y0[a] + sign * t * w[a];
          }
          if (point_in_all(y, 3, centers, radii, slack)) return true;
        }
      }
    }
  }
  return false;
}

void check_size(std::int64_t n, std::int64_t d) {
  if (n * d > kMaxTotalSize) {
    throw std::length_error("intersection volume: n * d exceeds " +
                            std::to_string(kMaxTotalSize));
  }
}

}  // namespace

void BallConfiguration::validate() const {
  if (dim < 1) {
    throw std::invalid_argument("BallConfiguration: dim must be >= 1");
  }
  if (radii.empty()) {
    throw std::invalid_argument("BallConfiguration: needs at least one ball");
  }
  for (double r : radii) {
    if (!(r > 0.0)) {
      throw std::invalid_argument("BallConfiguration: radii must be positive");
    }
  }
}

VolumePolynomial::VolumePolynomial(int parts, int dim)
    : parts_(parts), dim_(dim) {
  if (parts < 1 || dim < 1) {
    throw std::invalid_argument("VolumePolynomial: parts and dim must be >= 1");
  }
}

void VolumePolynomial::add_term(std::vector<int> multi_index,
                                double coefficient) {
  if (static_cast<int>(multi_index.size()) != parts_) {
    throw std::invalid_argument("VolumePolynomial: multi-index length != n");
  }
  for (int e : multi_index) {
    if (e < 0) {
      throw std::invalid_argument(
          "VolumePolynomial: multi-index entries must be non-negative");
    }
  }
  if (!(coefficient > 0.0)) {
    throw std::invalid_argument(
        "VolumePolynomial: coefficients must be positive");
  }
  terms_[std::move(multi_index)] += coefficient;
}

bool VolumePolynomial::homogeneous() const {
  if (terms_.empty()) return true;
  int deg = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    if (deg < 0) deg = s;
    if (s != deg) return false;
  }
  return true;
}

int VolumePolynomial::degree() const {
  if (terms_.empty()) {
    throw inhomogeneous_error("VolumePolynomial: no terms, degree undefined");
  }
  if (!homogeneous()) {
    throw inhomogeneous_error(
        "VolumePolynomial: terms have mixed total degree");
  }
  int deg = 0;
  for (int e : terms_.begin()->first) deg += e;
  return deg;
}

double VolumePolynomial::evaluate(std::span<const double> radii) const {
  if (static_cast<int>(radii.size()) != parts_) {
    throw std::invalid_argument("VolumePolynomial: radii length != n");
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c;
    for (int i = 0; i < parts_; ++i) term *= ipow(radii[i], m[i]);
    sum += term;
  }
  return sum;
}

VolumePolynomial intersection_volume_polynomial(int n_balls, int dim) {
  if (n_balls < 1 || dim < 1) {
    throw std::invalid_argument(
        "intersection_volume_polynomial: n and d must be >= 1");
  }
  check_size(n_balls, dim);
  VolumePolynomial poly(n_balls, dim);
  if (n_balls == 1) {
    poly.add_term({0}, 1.0);
    return poly;
  }

  const int n = n_balls;
  const int d = dim;
  // Exponents k_j of r_j for j = n, n-1, ..., 2. Each k_j runs up to d and
  // down to (n-j)d minus the exponents already fixed, clamped at zero so the
  // leading exponent (n-1)d - sum k_i stays within [0, d].
  std::vector<int> k(n + 1, 0);
  auto recurse = [&](auto&& self, int j, int suffix_sum) -> void {
    if (j == 1) {
      const int total = suffix_sum;
      const int lead = (n - 1) * d - total;   // exponent of r_1
      const int excess = total - (n - 2) * d;  // = d - lead
      double log_c = special::log_unit_ball_volume(d) +
                     special::log_unit_ball_volume(lead) -
                     special::log_unit_ball_volume(excess) +
                     special::log_gamma(d + 1.0) -
                     special::log_gamma(excess + 1.0);
      std::vector<int> m(n);
      m[0] = lead;
      for (int i = 2; i <= n; ++i) {
        m[i - 1] = k[i];
        log_c += special::log_unit_ball_volume(k[i]) -
                 special::log_unit_ball_volume(d - k[i]) -
                 special::log_gamma(d - k[i] + 1.0);
      }
      poly.add_term(std::move(m), std::exp(log_c));
      return;
    }
    const int lo = std::max(0, (n - j) * d - suffix_sum);
    for (k[j] = lo; k[j] <= d; ++k[j]) self(self, j - 1, suffix_sum + k[j]);
  };
  recurse(recurse, n, 0);
  return poly;
}

double coefficient_product_form(std::span<const int> multi_index, int dim) {
  const int n = static_cast<int>(multi_index.size());
  if (n < 1 || dim < 1) {
    throw std::domain_error("coefficient_product_form: empty multi-index");
  }
  int total = 0;
  for (int e : multi_index) {
    if (e < 0 || e > dim) {
      throw std::domain_error(
          "coefficient_product_form: entries must lie in [0, d]");
    }
    total += e;
  }
  if (total != (n - 1) * dim) {
    throw std::domain_error(
        "coefficient_product_form: |m| must equal (n-1)d");
  }
  double log_c =
      special::log_unit_ball_volume(dim) + special::log_gamma(dim + 1.0);
  for (int e : multi_index) {
    log_c += special::log_unit_ball_volume(e) -
             special::log_unit_ball_volume(dim - e) -
             special::log_gamma(dim - e + 1.0);
  }
  return std::exp(log_c);
}

double intersection_volume(const BallConfiguration& config) {
  config.validate();
  const VolumePolynomial poly =
      intersection_volume_polynomial(config.count(), config.dim);
  return poly.evaluate(config.radii);
}

double intersection_volume_special(const BallConfiguration& config) {
  config.validate();
  const int n = config.count();
  const int d = config.dim;
  const auto& r = config.radii;
  if (n == 1) return 1.0;
  if (n == 2) {
    return special::unit_ball_volume(d) * ipow(r[0] + r[1], d);
  }
  if (d == 1) {
    // 2^{n-1} * sum_i prod_{j != i} r_j
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double prod = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) prod *= r[j];
      }
      sum += prod;
    }
    return ipow(2.0, n - 1) * sum;
  }
  if (d == 2) {
    // pi^{n-1} sum_i prod_{j != i} r_j^2
    //   + 2 pi^{n-1} sum_{i<j} r_i r_j prod_{k != i,j} r_k^2
    const double pi_pow = ipow(special::kPi, n - 1);
    double all_sq = 1.0;
    for (int i = 0; i < n; ++i) all_sq *= r[i] * r[i];
    double first = 0.0;
    for (int i = 0; i < n; ++i) first += all_sq / (r[i] * r[i]);
    double second = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        second += all_sq / (r[i] * r[j]);
      }
    }
    return pi_pow * first + 2.0 * pi_pow * second;
  }
  throw unsupported_case_error(
      "intersection_volume_special: no closed form for n > 2 with d > 2");
}

bool balls_intersect(int dim, std::span<const double> centers,
                     std::span<const double> radii) {
  const int n = static_cast<int>(radii.size());
  if (dim < 1 || n < 1 ||
      centers.size() != static_cast<std::size_t>(n) * dim) {
    throw std::invalid_argument(
        "balls_intersect: centers/radii dimension mismatch");
  }
  for (double r : radii) {
    if (!(r > 0.0)) {
      throw std::invalid_argument("balls_intersect: radii must be positive");
    }
  }
  if (n == 1) return true;

  if (dim == 1) {
    double lo = centers[0] - radii[0];
    double hi = centers[0] + radii[0];
    for (int i = 1; i < n; ++i) {
      lo = std::max(lo, centers[i] - radii[i]);
      hi = std::min(hi, centers[i] + radii[i]);
    }
    return lo <= hi;
  }

  // Pairwise overlap is necessary for any n and sufficient for n = 2.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dist2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double delta = centers[i * dim + a] - centers[j * dim + a];
        dist2 += delta * delta;
      }
      const double reach = radii[i] + radii[j];
      if (dist2 > reach * reach) return false;
    }
  }
  if (n == 2) return true;

  // Exact witness tests in the plane and in space; the decision errs only
  // on a measure-zero set of boundary configurations.
  double r_max = radii[0];
  for (double r : radii) r_max = std::max(r_max, r);
  const double slack = 1e-12 * r_max;
  if (dim == 2) return discs_intersect_exact(centers, radii, slack);
  if (dim == 3) return balls3_intersect_exact(centers, radii, slack);

  // Cyclic projection onto the balls, started from the centroid.
  std::vector<double> y(dim, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < dim; ++a) y[a] += centers[i * dim + a];
  }
  for (int a = 0; a < dim; ++a) y[a] /= n;

  std::vector<double> y_prev(dim);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    y_prev = y;
    for (int i = 0; i < n; ++i) {
      double dist2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double delta = y[a] - centers[i * dim + a];
        dist2 += delta * delta;
      }
      const double dist = std::sqrt(dist2);
      if (dist > radii[i]) {
        const double scale = radii[i] / dist;
        for (int a = 0; a < dim; ++a) {
          y[a] = centers[i * dim + a] +
                 (y[a] - centers[i * dim + a]) * scale;
        }
      }
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      double dist2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double delta = y[a] - centers[i * dim + a];
        dist2 += delta * delta;
      }
      worst = std::max(worst, std::sqrt(dist2) - radii[i]);
    }
    if (worst < kFeasibilityTol) return true;
    double moved2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double delta = y[a] - y_prev[a];
      moved2 += delta * delta;
    }
    if (moved2 < kCycleTol * kCycleTol) return false;
  }
  return false;
}

EstimateWithCI intersection_volume_mc(const BallConfiguration& config,
                                      std::int64_t samples,
                                      std::uint64_t seed, int workers) {
  config.validate();
  if (samples < 10000) {
    throw std::invalid_argument(
        "intersection_volume_mc: samples must be at least 10^4");
  }
  const int n = config.count();
  const int d = config.dim;
  const auto& r = config.radii;

  // Sampling box: |t_i - t_1| <= r_1 + r_i per axis is necessary for overlap
  // with ball 1, so the box covers every feasible configuration.
  std::vector<double> half(n, 0.0);
  double box_volume = 1.0;
  for (int i = 1; i < n; ++i) {
    half[i] = r[0] + r[i];
    box_volume *= ipow(2.0 * half[i], d);
  }

  constexpr std::int64_t kChunk = 1 << 14;
  const std::int64_t n_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(n_chunks), 0);

  parallel_chunks(samples, kChunk, workers,
                  [&](std::int64_t chunk, std::int64_t lo, std::int64_t hi) {
                    CounterRng rng(seed, kStreamVolumeMc,
                                   static_cast<std::uint64_t>(chunk));
                    std::vector<double> centers(
                        static_cast<std::size_t>(n) * d, 0.0);
                    std::int64_t h = 0;
                    for (std::int64_t s = lo; s < hi; ++s) {
                      for (int i = 1; i < n; ++i) {
                        for (int a = 0; a < d; ++a) {
                          centers[i * d + a] =
                              half[i] * (2.0 * rng.next_double() - 1.0);
                        }
                      }
                      if (balls_intersect(d, centers, r)) ++h;
                    }
                    hits[static_cast<std::size_t>(chunk)] = h;
                  });

  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  EstimateWithCI est;
  est.mean = box_volume * p;
  est.std_error =
      box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  est.samples = samples;
  est.seed = seed;
  return est;
}

std::vector<double> ball_minkowski(int dim, double radius) {
  if (dim < 1 || !(radius > 0.0)) {
    throw std::invalid_argument("ball_minkowski: needs d >= 1 and r > 0");
  }
  std::vector<double> mu(dim + 1);
  for (int j = 0; j <= dim; ++j) {
    mu[j] = std::exp(special::log_unit_ball_volume(dim) -
                     special::log_unit_ball_volume(dim - j) +
                     special::log_binomial(dim, j)) *
            ipow(radius, j);
  }
  return mu;
}

std::vector<double> box_minkowski(std::span<const double> sides) {
  if (sides.empty()) {
    throw std::invalid_argument("box_minkowski: needs at least one side");
  }
  for (double s : sides) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("box_minkowski: sides must be positive");
    }
  }
  // mu_j is the j-th elementary symmetric polynomial of the side lengths.
  const int d = static_cast<int>(sides.size());
  std::vector<double> mu(d + 1, 0.0);
  mu[0] = 1.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j >= 1; --j) mu[j] += sides[i] * mu[j - 1];
  }
  return mu;
}

DomainSpec DomainSpec::interval(double length) {
  if (!(length > 0.0)) {
    throw std::invalid_argument("DomainSpec: interval length must be > 0");
  }
  DomainSpec spec;
  spec.kind = DomainKind::interval;
  spec.dim = 1;
  spec.parameters = {length};
  spec.minkowski = {1.0, length};
  return spec;
}

DomainSpec DomainSpec::box(std::span<const double> sides) {
  DomainSpec spec;
  spec.kind = sides.size() == 1 ? DomainKind::interval : DomainKind::box;
  spec.dim = static_cast<int>(sides.size());
  spec.parameters.assign(sides.begin(), sides.end());
  spec.minkowski = box_minkowski(sides);
  return spec;
}

DomainSpec DomainSpec::ball(int dim, double radius) {
  DomainSpec spec;
  spec.kind = DomainKind::ball;
  spec.dim = dim;
  spec.parameters = {radius};
  spec.minkowski = ball_minkowski(dim, radius);
  return spec;
}

}  // namespace conjprob::geom

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

#include "conjprob.h"

#include <new>
#include <span>
#include <utility>
#include <vector>

#include "asymptotics.hpp"
#include "ball_geometry.hpp"
#include "ec_heuristic.hpp"
#include "errors.hpp"
#include "field_sim.hpp"
#include "special_functions.hpp"

namespace {

using conjprob::EstimateWithCI;

template <typename Fn>
conjprob_status guarded(Fn&& fn) {
  try {
    fn();
    return CONJPROB_OK;
  } catch (const conjprob::unsupported_case_error&) {
    return CONJPROB_ERROR_UNSUPPORTED;
  } catch (const conjprob::inhomogeneous_error&) {
    return CONJPROB_ERROR_INHOMOGENEOUS;
  } catch (const std::length_error&) {
    return CONJPROB_ERROR_SIZE;
  } catch (const std::domain_error&) {
    return CONJPROB_ERROR_INVALID_ARGUMENT;
  } catch (const std::invalid_argument&) {
    return CONJPROB_ERROR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    return CONJPROB_ERROR_SIZE;
  } catch (...) {
    return CONJPROB_ERROR_INTERNAL;
  }
}

conjprob_estimate to_c(const EstimateWithCI& est) {
  conjprob_estimate out;
  out.mean = est.mean;
  out.std_error = est.std_error;
  out.samples = est.samples;
  out.seed = est.seed;
  return out;
}

}  // namespace

struct conjprob_poly {
  conjprob::geom::VolumePolynomial poly;
  // Stable index over the term map for positional access.
  std::vector<std::pair<const std::vector<int>*, double>> index;

  explicit conjprob_poly(conjprob::geom::VolumePolynomial p)
      : poly(std::move(p)) {
    index.reserve(poly.terms().size());
    for (const auto& [m, c] : poly.terms()) index.emplace_back(&m, c);
  }
};

struct conjprob_domain {
  conjprob::geom::DomainSpec spec;
};

extern "C" {

const char* conjprob_strerror(conjprob_status status) {
  switch (status) {
    case CONJPROB_OK:
      return "ok";
    case CONJPROB_ERROR_NULL_ARGUMENT:
      return "null argument";
    case CONJPROB_ERROR_INVALID_ARGUMENT:
      return "invalid argument: a precondition was violated";
    case CONJPROB_ERROR_SIZE:
      return "problem size above supported limits";
    case CONJPROB_ERROR_UNSUPPORTED:
      return "no closed form for these inputs";
    case CONJPROB_ERROR_INHOMOGENEOUS:
      return "polynomial terms have mixed total degree";
    case CONJPROB_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* conjprob_version(void) { return "1.0.0"; }

conjprob_status conjprob_log_gamma(double x, double* out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] { *out = conjprob::special::log_gamma(x); });
}

conjprob_status conjprob_hermite(int degree, double x, double* out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] { *out = conjprob::special::hermite(degree, x); });
}

conjprob_status conjprob_unit_ball_volume(int k, double* out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] { *out = conjprob::special::unit_ball_volume(k); });
}

double conjprob_gaussian_pdf(double u) {
  return conjprob::special::gaussian_pdf(u);
}

double conjprob_gaussian_tail(double u) {
  return conjprob::special::gaussian_tail(u);
}

conjprob_status conjprob_flag_coefficient(int m, int j, double* out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] { *out = conjprob::special::flag_coefficient(m, j); });
}

conjprob_status conjprob_poly_intersection(int n_balls, int dim,
                                           conjprob_poly** out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    *out = new conjprob_poly(
        conjprob::geom::intersection_volume_polynomial(n_balls, dim));
  });
}

void conjprob_poly_free(conjprob_poly* poly) { delete poly; }

int conjprob_poly_parts(const conjprob_poly* poly) {
  return poly ? poly->poly.parts() : 0;
}

int conjprob_poly_dim(const conjprob_poly* poly) {
  return poly ? poly->poly.dim() : 0;
}

int64_t conjprob_poly_term_count(const conjprob_poly* poly) {
  return poly ? poly->poly.term_count() : 0;
}

conjprob_status conjprob_poly_term(const conjprob_poly* poly, int64_t index,
                                   int* multi_index, double* coefficient) {
  if (!poly || !multi_index || !coefficient) {
    return CONJPROB_ERROR_NULL_ARGUMENT;
  }
  if (index < 0 || index >= static_cast<int64_t>(poly->index.size())) {
    return CONJPROB_ERROR_INVALID_ARGUMENT;
  }
  const auto& [m, c] = poly->index[static_cast<std::size_t>(index)];
  for (std::size_t i = 0; i < m->size(); ++i) {
    multi_index[i] = (*m)[i];
  }
  *coefficient = c;
  return CONJPROB_OK;
}

conjprob_status conjprob_poly_evaluate(const conjprob_poly* poly,
                                       const double* radii, int n_radii,
                                       double* out) {
  if (!poly || !radii || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    *out = poly->poly.evaluate(std::span<const double>(
        radii, static_cast<std::size_t>(n_radii < 0 ? 0 : n_radii)));
  });
}

conjprob_status conjprob_coefficient_product_form(const int* multi_index,
                                                  int n_parts, int dim,
                                                  double* out) {
  if (!multi_index || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  if (n_parts < 1) return CONJPROB_ERROR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = conjprob::geom::coefficient_product_form(
        std::span<const int>(multi_index, static_cast<std::size_t>(n_parts)),
        dim);
  });
}

conjprob_status conjprob_intersection_volume(int dim, const double* radii,
                                             int n_balls, double* out) {
  if (!radii || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  if (n_balls < 1) return CONJPROB_ERROR_INVALID_ARGUMENT;
  return guarded([&] {
    conjprob::geom::BallConfiguration config{
        dim, std::vector<double>(radii, radii + n_balls)};
    *out = conjprob::geom::intersection_volume(config);
  });
}

conjprob_status conjprob_intersection_volume_special(int dim,
                                                     const double* radii,
                                                     int n_balls,
                                                     double* out) {
  if (!radii || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  if (n_balls < 1) return CONJPROB_ERROR_INVALID_ARGUMENT;
  return guarded([&] {
    conjprob::geom::BallConfiguration config{
        dim, std::vector<double>(radii, radii + n_balls)};
    *out = conjprob::geom::intersection_volume_special(config);
  });
}

conjprob_status conjprob_balls_intersect(int dim, int n_balls,
                                         const double* centers,
                                         const double* radii, int* out) {
  if (!centers || !radii || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  if (n_balls < 1 || dim < 1) return CONJPROB_ERROR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = conjprob::geom::balls_intersect(
               dim,
               std::span<const double>(
                   centers, static_cast<std::size_t>(n_balls) * dim),
               std::span<const double>(radii,
                                       static_cast<std::size_t>(n_balls)))
               ? 1
               : 0;
  });
}

conjprob_status conjprob_intersection_volume_mc(int dim, const double* radii,
                                                int n_balls, int64_t samples,
                                                uint64_t seed, int workers,
                                                conjprob_estimate* out) {
  if (!radii || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  if (n_balls < 1) return CONJPROB_ERROR_INVALID_ARGUMENT;
  return guarded([&] {
    conjprob::geom::BallConfiguration config{
        dim, std::vector<double>(radii, radii + n_balls)};
    *out = to_c(conjprob::geom::intersection_volume_mc(config, samples, seed,
                                                       workers));
  });
}

conjprob_status conjprob_domain_interval(double length,
                                         conjprob_domain** out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    *out = new conjprob_domain{conjprob::geom::DomainSpec::interval(length)};
  });
}

conjprob_status conjprob_domain_box(const double* sides, int dim,
                                    conjprob_domain** out) {
  if (!sides || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  if (dim < 1) return CONJPROB_ERROR_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    *out = new conjprob_domain{conjprob::geom::DomainSpec::box(
        std::span<const double>(sides, static_cast<std::size_t>(dim)))};
  });
}

conjprob_status conjprob_domain_ball(int dim, double radius,
                                     conjprob_domain** out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    *out = new conjprob_domain{conjprob::geom::DomainSpec::ball(dim, radius)};
  });
}

void conjprob_domain_free(conjprob_domain* domain) { delete domain; }

int conjprob_domain_dim(const conjprob_domain* domain) {
  return domain ? domain->spec.dim : 0;
}

conjprob_status conjprob_domain_minkowski(const conjprob_domain* domain,
                                          double* mu) {
  if (!domain || !mu) return CONJPROB_ERROR_NULL_ARGUMENT;
  for (std::size_t j = 0; j < domain->spec.minkowski.size(); ++j) {
    mu[j] = domain->spec.minkowski[j];
  }
  return CONJPROB_OK;
}

conjprob_status conjprob_ball_minkowski(int dim, double radius, double* mu) {
  if (!mu) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    const std::vector<double> v = conjprob::geom::ball_minkowski(dim, radius);
    for (std::size_t j = 0; j < v.size(); ++j) mu[j] = v[j];
  });
}

conjprob_status conjprob_box_minkowski(const double* sides, int dim,
                                       double* mu) {
  if (!sides || !mu) return CONJPROB_ERROR_NULL_ARGUMENT;
  if (dim < 1) return CONJPROB_ERROR_INVALID_ARGUMENT;
  return guarded([&] {
    const std::vector<double> v = conjprob::geom::box_minkowski(
        std::span<const double>(sides, static_cast<std::size_t>(dim)));
    for (std::size_t j = 0; j < v.size(); ++j) mu[j] = v[j];
  });
}

conjprob_status conjprob_leading_coefficient(int n_fields, int dim,
                                             double* leading_constant,
                                             int* u_power, int* phi_power) {
  if (!leading_constant) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    const conjprob::asym::AsymptoticCoefficient coeff =
        conjprob::asym::conjunction_expansion(n_fields, dim);
    *leading_constant = coeff.leading_constant;
    if (u_power) *u_power = coeff.u_power;
    if (phi_power) *phi_power = coeff.phi_power;
  });
}

conjprob_status conjprob_coefficient_from_polynomial(const conjprob_poly* poly,
                                                     double* leading_constant,
                                                     int* u_power) {
  if (!poly || !leading_constant) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    const conjprob::asym::PolynomialCoefficient coeff =
        conjprob::asym::coefficient_from_polynomial(poly->poly);
    *leading_constant = coeff.leading_constant;
    if (u_power) *u_power = coeff.u_power;
  });
}

conjprob_status conjprob_conjunction_asymptotic(int n_fields, int dim,
                                                double u, double volume,
                                                double* out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    *out = conjprob::asym::conjunction_probability(n_fields, dim, u, volume);
  });
}

conjprob_status conjprob_b_constants(int dim, double* b) {
  if (!b) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    const std::vector<double> v = conjprob::ec::b_constants(dim);
    for (std::size_t j = 0; j < v.size(); ++j) b[j] = v[j];
  });
}

conjprob_status conjprob_ec_densities(int dim, double u, double* rho) {
  if (!rho) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    const conjprob::ec::EcDensities d = conjprob::ec::densities(dim, u);
    for (std::size_t j = 0; j < d.rho.size(); ++j) rho[j] = d.rho[j];
  });
}

conjprob_status conjprob_ec_prediction(int n_fields, double u,
                                       const conjprob_domain* domain,
                                       double* out) {
  if (!domain || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    *out = conjprob::ec::prediction(n_fields, u, domain->spec);
  });
}

conjprob_status conjprob_ec_volume_coefficient(int n_fields, int dim,
                                               double* out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded(
      [&] { *out = conjprob::ec::volume_coefficient(n_fields, dim); });
}

conjprob_status conjprob_coefficient_gap(int n_fields, int dim, double* out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] { *out = conjprob::ec::coefficient_gap(n_fields, dim); });
}

conjprob_status conjprob_pickands_estimate(int n_fields, double grid_spacing,
                                           double t_max, int64_t samples,
                                           uint64_t seed, int workers,
                                           conjprob_estimate* out) {
  if (!out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    conjprob::sim::PickandsPlan plan;
    plan.n_fields = n_fields;
    plan.grid_spacing = grid_spacing;
    plan.t_max = t_max;
    plan.samples = samples;
    plan.seed = seed;
    plan.workers = workers;
    *out = to_c(conjprob::sim::pickands_constant_mc(plan));
  });
}

conjprob_status conjprob_conjunction_estimate(int n_fields,
                                              const conjprob_domain* domain,
                                              double grid_step, double u,
                                              int64_t replicates,
                                              uint64_t seed, int workers,
                                              conjprob_estimate* out) {
  if (!domain || !out) return CONJPROB_ERROR_NULL_ARGUMENT;
  return guarded([&] {
    conjprob::sim::SimulationPlan plan;
    plan.n_fields = n_fields;
    plan.domain = domain->spec;
    plan.grid_step = grid_step;
    plan.u = u;
    plan.replicates = replicates;
    plan.seed = seed;
    plan.workers = workers;
    *out = to_c(conjprob::sim::conjunction_probability_mc(plan));
  });
}

conjprob_status conjprob_compare_asymptotic(int n_fields,
                                            const conjprob_domain* domain,
                                            double grid_step,
                                            const double* u_grid,
                                            int n_thresholds,
                                            int64_t replicates, uint64_t seed,
                                            int workers,
                                            conjprob_estimate* empirical,
                                            double* asymptotic) {
  if (!domain) return CONJPROB_ERROR_NULL_ARGUMENT;
  if (n_thresholds < 0) return CONJPROB_ERROR_INVALID_ARGUMENT;
  if (n_thresholds > 0 && (!u_grid || !empirical || !asymptotic)) {
    return CONJPROB_ERROR_NULL_ARGUMENT;
  }
  return guarded([&] {
    conjprob::sim::SimulationPlan plan;
    plan.n_fields = n_fields;
    plan.domain = domain->spec;
    plan.grid_step = grid_step;
    plan.u = 0.0;
    plan.replicates = replicates;
    plan.seed = seed;
    plan.workers = workers;
    const std::vector<conjprob::sim::ComparisonRow> rows =
        conjprob::sim::compare_with_asymptotic(
            plan, std::span<const double>(
                      u_grid, static_cast<std::size_t>(n_thresholds)));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      empirical[j].mean = rows[j].empirical;
      empirical[j].std_error = rows[j].std_error;
      empirical[j].samples = replicates;
      empirical[j].seed = seed;
      asymptotic[j] = rows[j].asymptotic;
    }
  });
}

}  // extern "C"

/* Copyright 2026  The conjprob authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Public C interface of libconjprob.
 *
 * The library quantifies how likely it is that several independent smooth
 * stationary Gaussian fields on a common index set all exceed a high
 * threshold somewhere (the conjunction probability). It provides:
 *
 *   - the leading coefficient of the high-threshold expansion
 *     u^{d-n} phi(u)^n volume(S) * L(n, d), by two independent routes;
 *   - the volume polynomial of ball-center configurations with a common
 *     point, its closed special cases, and a Monte Carlo oracle for it;
 *   - the Euler characteristic prediction (1,0,...,0) R^n mu(S) together
 *     with the identity between its volume-term coefficient and L(n, d);
 *   - simulation estimators: empirical conjunction probability of sampled
 *     fields and the generalized Pickands constant.
 *
 * Conventions: every fallible function returns a conjprob_status and writes
 * results through out-pointers; functions that cannot fail return the value
 * directly. Objects with state are opaque handles with _free releasers.
 * All stochastic routines are deterministic in (seed), independent of the
 * worker count (workers <= 0 means all cores).
 */

#ifndef CONJPROB_H
#define CONJPROB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum conjprob_status {
  CONJPROB_OK = 0,
  CONJPROB_ERROR_NULL_ARGUMENT = 1,
  CONJPROB_ERROR_INVALID_ARGUMENT = 2, /* a precondition was violated */
  CONJPROB_ERROR_SIZE = 3,             /* problem size above supported limits */
  CONJPROB_ERROR_UNSUPPORTED = 4,      /* no closed form for these inputs */
  CONJPROB_ERROR_INHOMOGENEOUS = 5,    /* polynomial of mixed total degree */
  CONJPROB_ERROR_INTERNAL = 6
} conjprob_status;

/* Static description of a status code; never NULL. */
const char* conjprob_strerror(conjprob_status status);
const char* conjprob_version(void);

/* A Monte Carlo estimate; std_error is sample std dev / sqrt(samples). */
typedef struct conjprob_estimate {
  double mean;
  double std_error;
  int64_t samples;
  uint64_t seed;
} conjprob_estimate;

/* ---------------- scalar special functions ---------------- */

/* ln Gamma(x), x > 0. */
conjprob_status conjprob_log_gamma(double x, double* out);
/* Probabilists' Hermite polynomial H_degree(x), degree >= 0. */
conjprob_status conjprob_hermite(int degree, double x, double* out);
/* Volume of the k-dimensional unit ball, k >= 0. */
conjprob_status conjprob_unit_ball_volume(int k, double* out);
/* Standard normal density / upper tail. */
double conjprob_gaussian_pdf(double u);
double conjprob_gaussian_tail(double u);
/* Flag coefficient omega_m / (omega_j omega_{m-j}) * C(m, j), 0 <= j <= m. */
conjprob_status conjprob_flag_coefficient(int m, int j, double* out);

/* ---------------- feasible-center volume polynomial ---------------- */

/* Homogeneous polynomial in n radii whose value at (r_1, ..., r_n) is the
 * volume of center configurations (t_2, ..., t_n) such that all n balls
 * share a point. Requires n >= 1, d >= 1, n * d <= 64. */
typedef struct conjprob_poly conjprob_poly;

conjprob_status conjprob_poly_intersection(int n_balls, int dim,
                                           conjprob_poly** out);
void conjprob_poly_free(conjprob_poly* poly);
int conjprob_poly_parts(const conjprob_poly* poly); /* n; 0 if NULL */
int conjprob_poly_dim(const conjprob_poly* poly);   /* d; 0 if NULL */
int64_t conjprob_poly_term_count(const conjprob_poly* poly);
/* Term by index in a fixed (lexicographic) order. multi_index receives n
 * entries. */
conjprob_status conjprob_poly_term(const conjprob_poly* poly, int64_t index,
                                   int* multi_index, double* coefficient);
conjprob_status conjprob_poly_evaluate(const conjprob_poly* poly,
                                       const double* radii, int n_radii,
                                       double* out);

/* Consolidated product form of one coefficient; multi_index must have
 * entries in [0, dim] summing to (n_parts - 1) * dim. */
conjprob_status conjprob_coefficient_product_form(const int* multi_index,
                                                  int n_parts, int dim,
                                                  double* out);

/* Polynomial evaluated at the given radii (closed form). */
conjprob_status conjprob_intersection_volume(int dim, const double* radii,
                                             int n_balls, double* out);
/* Shortcut closed forms: any n with d <= 2, or n <= 2 with any d.
 * CONJPROB_ERROR_UNSUPPORTED for n > 2 with d > 2. */
conjprob_status conjprob_intersection_volume_special(int dim,
                                                     const double* radii,
                                                     int n_balls, double* out);
/* 1 iff the balls (centers row-major n x dim) share a common point. */
conjprob_status conjprob_balls_intersect(int dim, int n_balls,
                                         const double* centers,
                                         const double* radii, int* out);
/* Hit-or-miss oracle for the feasible-center volume; samples >= 10^4. */
conjprob_status conjprob_intersection_volume_mc(int dim, const double* radii,
                                                int n_balls, int64_t samples,
                                                uint64_t seed, int workers,
                                                conjprob_estimate* out);

/* ---------------- domains and Minkowski functionals ---------------- */

typedef struct conjprob_domain conjprob_domain;

conjprob_status conjprob_domain_interval(double length, conjprob_domain** out);
conjprob_status conjprob_domain_box(const double* sides, int dim,
                                    conjprob_domain** out);
conjprob_status conjprob_domain_ball(int dim, double radius,
                                     conjprob_domain** out);
void conjprob_domain_free(conjprob_domain* domain);
int conjprob_domain_dim(const conjprob_domain* domain); /* 0 if NULL */
/* mu receives dim + 1 functionals (mu_0, ..., mu_d); mu_d is the volume. */
conjprob_status conjprob_domain_minkowski(const conjprob_domain* domain,
                                          double* mu);

/* mu receives dim + 1 entries. */
conjprob_status conjprob_ball_minkowski(int dim, double radius, double* mu);
conjprob_status conjprob_box_minkowski(const double* sides, int dim,
                                       double* mu);

/* ---------------- asymptotic expansion ---------------- */

/* Leading constant L(n, d) (per unit volume, including the (2 pi)^{-d/2}
 * prefactor) with the accompanying powers: the expansion reads
 * u^{u_power} phi(u)^{phi_power} volume(S) L(n, d). */
conjprob_status conjprob_leading_coefficient(int n_fields, int dim,
                                             double* leading_constant,
                                             int* u_power, int* phi_power);
/* General engine: expansion constant and threshold exponent derived from a
 * homogeneous feasible-center volume polynomial. */
conjprob_status conjprob_coefficient_from_polynomial(const conjprob_poly* poly,
                                                     double* leading_constant,
                                                     int* u_power);
/* u^{d-n} phi(u)^n volume L(n, d); u > 0, volume > 0. */
conjprob_status conjprob_conjunction_asymptotic(int n_fields, int dim,
                                                double u, double volume,
                                                double* out);

/* ---------------- Euler characteristic prediction ---------------- */

/* b receives dim + 1 constants Gamma((i+1)/2) / Gamma(1/2). */
conjprob_status conjprob_b_constants(int dim, double* b);
/* rho receives dim + 1 EC densities at threshold u. */
conjprob_status conjprob_ec_densities(int dim, double u, double* rho);
/* Expected Euler characteristic of the conjunction set:
 * (1, 0, ..., 0) R^n (mu_0 b_0, ..., mu_d b_d)^T. */
conjprob_status conjprob_ec_prediction(int n_fields, double u,
                                       const conjprob_domain* domain,
                                       double* out);
/* Coefficient of u^{d-n} phi(u)^n volume(S) inside the EC prediction. */
conjprob_status conjprob_ec_volume_coefficient(int n_fields, int dim,
                                               double* out);
/* Relative gap between the EC volume coefficient and L(n, d);
 * numerically zero. */
conjprob_status conjprob_coefficient_gap(int n_fields, int dim, double* out);

/* ---------------- simulation estimators ---------------- */

/* Generalized Pickands constant via the linear-drift representation;
 * requires 0 < grid_spacing <= 0.1 and t_max^2 > 6 sqrt(2) t_max + 10. */
conjprob_status conjprob_pickands_estimate(int n_fields, double grid_spacing,
                                           double t_max, int64_t samples,
                                           uint64_t seed, int workers,
                                           conjprob_estimate* out);
/* Empirical P(grid sup of the pointwise min of n sampled fields >= u) on an
 * interval or box domain; 0 < grid_step <= 0.1, replicates >= 1000. */
conjprob_status conjprob_conjunction_estimate(int n_fields,
                                              const conjprob_domain* domain,
                                              double grid_step, double u,
                                              int64_t replicates,
                                              uint64_t seed, int workers,
                                              conjprob_estimate* out);
/* One simulation scored against every threshold in u_grid; empirical gets
 * n_thresholds estimates and asymptotic the matching expansion values. */
conjprob_status conjprob_compare_asymptotic(int n_fields,
                                            const conjprob_domain* domain,
                                            double grid_step,
                                            const double* u_grid,
                                            int n_thresholds,
                                            int64_t replicates, uint64_t seed,
                                            int workers,
                                            conjprob_estimate* empirical,
                                            double* asymptotic);

#ifdef __cplusplus
}
#endif

#endif /* CONJPROB_H */

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

#include "asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "special_functions.hpp"

namespace conjprob::asym {

double conjunction_coefficient(int n_fields, int dim) {
  if (n_fields < 1 || dim < 1) {
    throw std::invalid_argument(
        "conjunction_coefficient: n and d must be >= 1");
  }
  if (static_cast<std::int64_t>(n_fields) * dim > geom::kMaxTotalSize) {
    throw std::length_error("conjunction_coefficient: n * d exceeds " +
                            std::to_string(geom::kMaxTotalSize));
  }
  const int n = n_fields;
  const int d = dim;
  const double log_prefactor = -0.5 * d * special::kLogTwoPi;
  if (n == 1) return std::exp(log_prefactor);

  // Same index ranges as the volume polynomial, but the summand keeps only
  // the flag-coefficient and factorial parts; every term is positive and is
  // exponentiated from log space individually.
  double sum = 0.0;
  std::vector<int> k(n + 1, 0);
  auto recurse = [&](auto&& self, int j, int suffix_sum) -> void {
    if (j == 1) {
      const int excess = suffix_sum - (n - 2) * d;
      double log_t = log_prefactor + special::log_unit_ball_volume(d) -
                     special::log_unit_ball_volume(excess) +
                     special::log_gamma(d + 1.0) -
                     special::log_gamma(excess + 1.0);
      for (int i = 2; i <= n; ++i) {
        log_t -= special::log_unit_ball_volume(d - k[i]) +
                 special::log_gamma(d - k[i] + 1.0);
      }
      sum += std::exp(log_t);
      return;
    }
    const int lo = std::max(0, (n - j) * d - suffix_sum);
    for (k[j] = lo; k[j] <= d; ++k[j]) self(self, j - 1, suffix_sum + k[j]);
  };
  recurse(recurse, n, 0);
  return sum;
}

AsymptoticCoefficient conjunction_expansion(int n_fields, int dim) {
  AsymptoticCoefficient coeff;
  coeff.n_fields = n_fields;
  coeff.dim = dim;
  coeff.leading_constant = conjunction_coefficient(n_fields, dim);
  coeff.u_power = dim - n_fields;
  coeff.phi_power = n_fields;
  return coeff;
}

PolynomialCoefficient coefficient_from_polynomial(
    const geom::VolumePolynomial& poly) {
  const int n = poly.parts();
  const int d = poly.dim();
  const int k = poly.degree();  // throws if inhomogeneous or empty

  const double log_prefactor =
      0.5 * k * std::log(2.0) - 0.5 * n * d * special::kLogTwoPi;
  double sum = 0.0;
  for (const auto& [m, c] : poly.terms()) {
    double log_t = log_prefactor + std::log(c);
    for (int e : m) log_t += special::log_gamma(1.0 + 0.5 * e);
    sum += std::exp(log_t);
  }
  PolynomialCoefficient result;
  result.leading_constant = sum;
  result.u_power = n * d - n - k;
  return result;
}

double conjunction_probability(int n_fields, int dim, double u,
                               double volume) {
  if (!(u > 0.0)) {
    throw std::invalid_argument("conjunction_probability: u must be > 0");
  }
  if (!(volume > 0.0)) {
    throw std::invalid_argument("conjunction_probability: volume must be > 0");
  }
  return std::pow(u, dim - n_fields) *
         std::pow(special::gaussian_pdf(u), n_fields) * volume *
         conjunction_coefficient(n_fields, dim);
}

}  // namespace conjprob::asym

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

#include "special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conjprob::special {

// Lanczos approximation, g = 5.2421875, 14 coefficients.
// Press et al., Numerical Recipes, 3rd ed., sec. 6.1.
double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: requires x > 0, got " +
                            std::to_string(x));
  }
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3,
      -0.210264441724104883e-3, 0.217439618115212643e-3,
      -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double hermite(int degree, double x) {
  if (degree < 0) {
    throw std::domain_error("hermite: degree must be non-negative");
  }
  if (degree == 0) return 1.0;
  double h_prev = 1.0;
  double h = x;
  for (int j = 1; j < degree; ++j) {
    const double h_next = x * h - static_cast<double>(j) * h_prev;
    h_prev = h;
    h = h_next;
  }
  return h;
}

double log_unit_ball_volume(int k) {
  if (k < 0) {
    throw std::domain_error("log_unit_ball_volume: k must be non-negative");
  }
  return 0.5 * k * kLogPi - log_gamma(1.0 + 0.5 * k);
}

double unit_ball_volume(int k) { return std::exp(log_unit_ball_volume(k)); }

double gaussian_pdf(double u) {
  return kInvSqrtTwoPi * std::exp(-0.5 * u * u);
}

double gaussian_tail(double u) { return 0.5 * std::erfc(u / kSqrtTwo); }

double log_binomial(int n, int k) {
  if (k < 0 || k > n) {
    throw std::domain_error("log_binomial: requires 0 <= k <= n");
  }
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double flag_coefficient(int m, int j) {
  if (j < 0 || j > m) {
    throw std::domain_error("flag_coefficient: requires 0 <= j <= m");
  }
  return std::exp(log_unit_ball_volume(m) - log_unit_ball_volume(j) -
                  log_unit_ball_volume(m - j) + log_binomial(m, j));
}

}  // namespace conjprob::special

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
//
// Euler characteristic heuristic for the conjunction probability: the
// expected Euler characteristic of the conjunction set is
// (1, 0, ..., 0) R^n mu(S), with R the upper-triangular Toeplitz matrix of
// scaled EC densities and mu(S) the vector of scaled Minkowski functionals.
// The module also extracts the coefficient of the volume term of that
// prediction and compares it with the direct asymptotic route; the two
// coincide, which is a tested identity rather than an assumption.

#ifndef CONJPROB_EC_HEURISTIC_HPP
#define CONJPROB_EC_HEURISTIC_HPP

#include <span>
#include <vector>

#include "ball_geometry.hpp"

namespace conjprob::ec {

// b_i = Gamma((i+1)/2) / Gamma(1/2), i = 0..dim.
std::vector<double> b_constants(int dim);

// EC densities at threshold u: rho_0 is the Gaussian upper tail and
// rho_i = (2 pi)^{-(i+1)/2} H_{i-1}(u) e^{-u^2/2} for i >= 1.
struct EcDensities {
  double u = 0.0;
  std::vector<double> rho;  // rho_0 ... rho_d
};

EcDensities densities(int dim, double u);

// Upper-triangular Toeplitz matrix of size (d+1) x (d+1), stored dense.
// Products keep the lower triangle exactly zero and stay Toeplitz, so
// repeated multiplication is used verbatim for powers.
class ToeplitzMatrix {
 public:
  // Entry (i, j) = first_row[j - i] for j >= i, 0 below the diagonal.
  explicit ToeplitzMatrix(std::vector<double> first_row);

  // first_row[j] = rho_j / b_j at threshold u.
  static ToeplitzMatrix ec_matrix(int dim, double u);

  int dim() const { return size_ - 1; }
  double entry(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * size_ + j];
  }

  ToeplitzMatrix multiply(const ToeplitzMatrix& other) const;
  ToeplitzMatrix power(int exponent) const;  // exponent >= 1

  std::vector<double> apply(std::span<const double> v) const;

 private:
  ToeplitzMatrix() = default;
  int size_ = 0;
  std::vector<double> data_;
};

// (1, 0, ..., 0) R^n (mu_0 b_0, ..., mu_d b_d)^T for the given domain.
// n = 1 reduces to sum_i rho_i mu_i(S).
double prediction(int n_fields, double u, const geom::DomainSpec& domain);

// Coefficient of u^{d-n} phi(u)^n lambda_d(S) in the prediction: the sum
// over weakly increasing (h_1 <= ... <= h_{n-1}) in [0, d] of
//   Gamma(1/2)^{n-1} Gamma((d+1)/2) / prod_gaps Gamma((gap+1)/2),
// divided by (2 pi)^{d/2}.
double volume_coefficient(int n_fields, int dim);

// Relative difference between volume_coefficient and the direct asymptotic
// constant; numerically zero for all supported (n, d).
double coefficient_gap(int n_fields, int dim);

}  // namespace conjprob::ec

#endif  // CONJPROB_EC_HEURISTIC_HPP

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

#include "ec_heuristic.hpp"

#include <cmath>
#include <stdexcept>

#include "asymptotics.hpp"
#include "special_functions.hpp"

namespace conjprob::ec {

std::vector<double> b_constants(int dim) {
  if (dim < 0) throw std::invalid_argument("b_constants: dim must be >= 0");
  const double log_gamma_half = special::log_gamma(0.5);
  std::vector<double> b(dim + 1);
  for (int i = 0; i <= dim; ++i) {
    b[i] = std::exp(special::log_gamma(0.5 * (i + 1)) - log_gamma_half);
  }
  return b;
}

EcDensities densities(int dim, double u) {
  if (dim < 0) throw std::invalid_argument("densities: dim must be >= 0");
  EcDensities result;
  result.u = u;
  result.rho.resize(dim + 1);
  result.rho[0] = special::gaussian_tail(u);
  const double gauss_kernel = std::exp(-0.5 * u * u);
  for (int i = 1; i <= dim; ++i) {
    result.rho[i] = std::pow(special::kTwoPi, -0.5 * (i + 1)) *
                    special::hermite(i - 1, u) * gauss_kernel;
  }
  return result;
}

ToeplitzMatrix::ToeplitzMatrix(std::vector<double> first_row) {
  if (first_row.empty()) {
    throw std::invalid_argument("ToeplitzMatrix: empty first row");
  }
  size_ = static_cast<int>(first_row.size());
  data_.assign(static_cast<std::size_t>(size_) * size_, 0.0);
  for (int i = 0; i < size_; ++i) {
    for (int j = i; j < size_; ++j) {
      data_[static_cast<std::size_t>(i) * size_ + j] = first_row[j - i];
    }
  }
}

ToeplitzMatrix ToeplitzMatrix::ec_matrix(int dim, double u) {
  const EcDensities dens = densities(dim, u);
  const std::vector<double> b = b_constants(dim);
  std::vector<double> row(dim + 1);
  for (int j = 0; j <= dim; ++j) row[j] = dens.rho[j] / b[j];
  return ToeplitzMatrix(std::move(row));
}

ToeplitzMatrix ToeplitzMatrix::multiply(const ToeplitzMatrix& other) const {
  if (other.size_ != size_) {
    throw std::invalid_argument("ToeplitzMatrix: size mismatch");
  }
  ToeplitzMatrix result;
  result.size_ = size_;
  result.data_.assign(static_cast<std::size_t>(size_) * size_, 0.0);
  for (int i = 0; i < size_; ++i) {
    for (int j = i; j < size_; ++j) {
      double acc = 0.0;
      for (int k = i; k <= j; ++k) {
        acc += entry(i, k) * other.entry(k, j);
      }
      result.data_[static_cast<std::size_t>(i) * size_ + j] = acc;
    }
  }
  return result;
}

ToeplitzMatrix ToeplitzMatrix::power(int exponent) const {
  if (exponent < 1) {
    throw std::invalid_argument("ToeplitzMatrix: power needs exponent >= 1");
  }
  ToeplitzMatrix result = *this;
  for (int i = 1; i < exponent; ++i) result = result.multiply(*this);
  return result;
}

std::vector<double> ToeplitzMatrix::apply(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != size_) {
    throw std::invalid_argument("ToeplitzMatrix: vector size mismatch");
  }
  std::vector<double> out(size_, 0.0);
  for (int i = 0; i < size_; ++i) {
    double acc = 0.0;
    for (int j = i; j < size_; ++j) acc += entry(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double prediction(int n_fields, double u, const geom::DomainSpec& domain) {
  if (n_fields < 1) {
    throw std::invalid_argument("ec prediction: n must be >= 1");
  }
  const int d = domain.dim;
  if (static_cast<int>(domain.minkowski.size()) != d + 1) {
    throw std::invalid_argument(
        "ec prediction: domain needs d + 1 Minkowski functionals");
  }
  const ToeplitzMatrix rn = ToeplitzMatrix::ec_matrix(d, u).power(n_fields);
  const std::vector<double> b = b_constants(d);
  double acc = 0.0;
  for (int j = 0; j <= d; ++j) {
    acc += rn.entry(0, j) * domain.minkowski[j] * b[j];
  }
  return acc;
}

double volume_coefficient(int n_fields, int dim) {
  if (n_fields < 1 || dim < 1) {
    throw std::invalid_argument("volume_coefficient: n and d must be >= 1");
  }
  const int n = n_fields;
  const int d = dim;
  const double log_gamma_half = special::log_gamma(0.5);
  const double log_prefactor = (n - 1) * log_gamma_half +
                               special::log_gamma(0.5 * (d + 1)) -
                               0.5 * d * special::kLogTwoPi;

  // Enumerate weakly increasing (h_1 <= ... <= h_{n-1}) in [0, d]; the n
  // gaps (h_1, h_2 - h_1, ..., d - h_{n-1}) index the density factors.
  double sum = 0.0;
  auto recurse = [&](auto&& self, int level, int h_prev,
                     double log_partial) -> void {
    if (level == n) {
      sum += std::exp(log_partial -
                      special::log_gamma(0.5 * (d - h_prev + 1)));
      return;
    }
    for (int h = h_prev; h <= d; ++h) {
      self(self, level + 1, h,
           log_partial - special::log_gamma(0.5 * (h - h_prev + 1)));
    }
  };
  recurse(recurse, 1, 0, log_prefactor);
  return sum;
}

double coefficient_gap(int n_fields, int dim) {
  const double direct = asym::conjunction_coefficient(n_fields, dim);
  const double from_ec = volume_coefficient(n_fields, dim);
  return std::abs(direct - from_ec) / direct;
}

}  // namespace conjprob::ec

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
// Leading-order expansion of the conjunction probability
//   P( sup_{t in S} min_i X_i(t) >= u )
// for n independent copies of a smooth stationary unit-variance Gaussian
// field on S subset R^d, as u -> infinity:
//   u^{d-n} * phi(u)^n * lambda_d(S) * L(n, d) * (1 + o(1)).
// The constant L(n, d) is computed by two independent routes: a direct
// nested flag-coefficient sum, and a general engine that converts any
// homogeneous feasible-center volume polynomial into the expansion
// coefficient. Agreement of the two routes is a tested invariant. Only the
// leading term is produced; no remainder rate is modeled.

#ifndef CONJPROB_ASYMPTOTICS_HPP
#define CONJPROB_ASYMPTOTICS_HPP

#include "ball_geometry.hpp"

namespace conjprob::asym {

struct AsymptoticCoefficient {
  int n_fields = 0;
  int dim = 0;
  double leading_constant = 0.0;  // multiplies u^{d-n} phi(u)^n lambda_d(S)
  int u_power = 0;                // d - n
  int phi_power = 0;              // n
};

struct PolynomialCoefficient {
  double leading_constant = 0.0;
  int u_power = 0;  // nd - n - k for a degree-k polynomial
};

// Per-unit-volume leading constant L(n, d), including the (2 pi)^{-d/2}
// prefactor, by direct summation over the admissible index tuples. Does not
// touch the geometry module; it is the reference route.
double conjunction_coefficient(int n_fields, int dim);

AsymptoticCoefficient conjunction_expansion(int n_fields, int dim);

// General engine: a homogeneous polynomial of degree k in n radii (the
// feasible-center volume) yields the constant
//   (2^{k/2} / (2 pi)^{nd/2}) * sum_m C_m prod_i Gamma(1 + m_i/2)
// and the threshold exponent nd - n - k. Throws inhomogeneous_error when the
// terms have mixed total degree.
PolynomialCoefficient coefficient_from_polynomial(
    const geom::VolumePolynomial& poly);

// u^{d-n} phi(u)^n * volume * L(n, d), for u > 0.
double conjunction_probability(int n_fields, int dim, double u, double volume);

}  // namespace conjprob::asym

#endif  // CONJPROB_ASYMPTOTICS_HPP

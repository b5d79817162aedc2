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

#ifndef CONJPROB_SPECIAL_FUNCTIONS_HPP
#define CONJPROB_SPECIAL_FUNCTIONS_HPP

namespace conjprob::special {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kLogPi = 1.14472988584940017414;
inline constexpr double kLogTwoPi = 1.83787706640934548356;
inline constexpr double kInvSqrtTwoPi = 0.39894228040143267794;
inline constexpr double kSqrtTwo = 1.41421356237309504880;

// ln Gamma(x) for x > 0, good to ~15 significant digits.
// Throws std::domain_error for x <= 0.
double log_gamma(double x);

// Probabilists' Hermite polynomial H_j(x), by the three-term recurrence
// H_{j+1} = x H_j - j H_{j-1} with H_0 = 1, H_1 = x.
double hermite(int degree, double x);

// Volume of the k-dimensional unit ball, omega_k = pi^{k/2} / Gamma(1 + k/2),
// and its logarithm. omega_0 = 1.
double unit_ball_volume(int k);
double log_unit_ball_volume(int k);

// Standard normal density and upper tail P(Z >= u); the tail goes through
// the C library erfc and is good to full double precision on |u| <= 8.
double gaussian_pdf(double u);
double gaussian_tail(double u);

// ln C(n, k) via log_gamma.
double log_binomial(int n, int k);

// Flag coefficient [m j] = omega_m / (omega_j * omega_{m-j}) * C(m, j),
// evaluated in log space so it stays finite for large m.
double flag_coefficient(int m, int j);

}  // namespace conjprob::special

#endif  // CONJPROB_SPECIAL_FUNCTIONS_HPP

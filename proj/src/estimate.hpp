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

#ifndef CONJPROB_ESTIMATE_HPP
#define CONJPROB_ESTIMATE_HPP

#include <cstdint>

namespace conjprob {

// Monte Carlo estimate with its standard error. Every stochastic routine in
// the library returns one of these; std_error is sample std dev / sqrt(samples).
struct EstimateWithCI {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

}  // namespace conjprob

#endif  // CONJPROB_ESTIMATE_HPP

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

#ifndef CONJPROB_ERRORS_HPP
#define CONJPROB_ERRORS_HPP

#include <stdexcept>

namespace conjprob {

// Inputs outside the closed-form special cases.
struct unsupported_case_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Polynomial whose terms do not share a common total degree.
struct inhomogeneous_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace conjprob

#endif  // CONJPROB_ERRORS_HPP

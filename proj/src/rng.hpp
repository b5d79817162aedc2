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

#ifndef CONJPROB_RNG_HPP
#define CONJPROB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace conjprob {

// Stream tags; each stochastic subsystem keys its streams with one of these
// so that different estimators never consume overlapping random sequences.
enum StreamTag : std::uint64_t {
  kStreamVolumeMc = 1,
  kStreamFieldDraw = 2,
  kStreamConjunctionMc = 3,
  kStreamPickandsMc = 4,
};

// Counter-based generator built on the SplitMix64 output function
// (Steele, Lea & Flood 2014): output i of a stream is mix(key + i*gamma).
// A stream is identified by (seed, tag, index), so any logical work unit
// (a replicate, a sample chunk) can derive its own stream independently of
// which worker thread executes it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t tag = 0,
                      std::uint64_t index = 0)
      : key_(derive_key(seed, tag, index)) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform on [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double next_double_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method; the second variate of
  // each accepted pair is cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Unit-mean exponential.
  double next_exponential() { return -std::log(next_double_pos()); }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t tag,
                                  std::uint64_t index) {
    std::uint64_t k = mix(seed + kGamma);
    k = mix(k ^ mix(tag + 0xD1B54A32D192ED03ull));
    k = mix(k ^ mix(index + 0x8CB92BA72F3D8DD7ull));
    return k;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace conjprob

#endif  // CONJPROB_RNG_HPP

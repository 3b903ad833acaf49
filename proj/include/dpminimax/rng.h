// Copyright 2026 The dpminimax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPMINIMAX_RNG_H_
#define DPMINIMAX_RNG_H_

#include <cstdint>
#include <limits>
#include <random>

namespace dpminimax {

// SplitMix64 bit generator. Cheap to construct, so every Monte-Carlo trial
// can own a stream derived from (seed, cell, trial) and results do not depend
// on how trials are scheduled across threads.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on [0, 1).
  double Uniform();
  double Normal();
  // Exponential with rate 1.
  double Exponential();
  // Laplace with location 0 and the given scale.
  double Laplace(double scale);
  // Uniform integer in [0, n).
  uint64_t UniformIndex(uint64_t n);

 private:
  uint64_t state_;
  std::normal_distribution<double> normal_;
};

// Mixes a master seed with up to two stream coordinates.
uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b = 0);

inline Rng StreamRng(uint64_t seed, uint64_t a, uint64_t b = 0) {
  return Rng(DeriveSeed(seed, a, b));
}

}  // namespace dpminimax

#endif  // DPMINIMAX_RNG_H_

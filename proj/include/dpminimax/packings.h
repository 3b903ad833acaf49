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

#ifndef DPMINIMAX_PACKINGS_H_
#define DPMINIMAX_PACKINGS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpminimax/parameter_space.h"

namespace dpminimax {

// Binary words of length d, bit-packed into 64-bit limbs.
class BinaryCode {
 public:
  BinaryCode(int d, double zeta, int min_distance)
      : d_(d), zeta_(zeta), min_distance_(min_distance) {}

  int d() const { return d_; }
  double zeta() const { return zeta_; }
  int size() const { return static_cast<int>(words_.size()); }
  // Guaranteed pairwise distance ceil((1/2 - zeta) d).
  int min_distance() const { return min_distance_; }
  // Smallest pairwise distance actually present; d for a single word.
  int RealizedMinDistance() const;

  int Bit(int word, int k) const;
  std::vector<int> Word(int word) const;
  int Hamming(int a, int b) const;

  void Add(std::vector<uint64_t> limbs) { words_.push_back(std::move(limbs)); }
  const std::vector<std::vector<uint64_t>>& limbs() const { return words_; }

 private:
  int d_;
  double zeta_;
  int min_distance_;
  std::vector<std::vector<uint64_t>> words_;
};

// ceil(exp(zeta^2 d / 2)).
int64_t VarshamovGilbertSize(int d, double zeta);
// ceil((1/2 - zeta) d).
int VarshamovGilbertDistance(int d, double zeta);

inline constexpr int64_t kVgDrawBudget = 1000000;
inline constexpr int kVgRestarts = 10;

// Randomized greedy: uniform candidate words are kept when they are at
// distance >= VarshamovGilbertDistance from every kept word, until
// VarshamovGilbertSize words are kept. Each of kVgRestarts attempts has its
// own derived stream and kVgDrawBudget draws; BudgetExhausted if all fail.
absl::StatusOr<BinaryCode> VarshamovGilbert(int d, double zeta, uint64_t seed);

enum class Metric { kAbsDiff, kEuclidean };

double PackingDistance(Metric metric, const Vector& a, const Vector& b);

struct Packing {
  std::vector<Vector> points;
  double omega = 0.0;
  Metric metric = Metric::kEuclidean;
};

// All distinct pairs at distance >= 2 omega (up to a relative 1e-12).
bool IsPacking(const Packing& packing);

// theta_i = center + alpha w_i with omega = alpha sqrt(realized min
// distance) / 2. OutOfSpace if a supplied space misses a point.
absl::StatusOr<Packing> ScaleCode(
    const BinaryCode& code, double alpha, const Vector& center,
    const std::optional<ParameterSpace>& space = std::nullopt);

// Omega = distance / 2. The points must differ.
absl::StatusOr<Packing> TwoPoint(const Vector& theta1, const Vector& theta2,
                                 Metric metric);

}  // namespace dpminimax

#endif  // DPMINIMAX_PACKINGS_H_

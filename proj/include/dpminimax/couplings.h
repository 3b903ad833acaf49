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

#ifndef DPMINIMAX_COUPLINGS_H_
#define DPMINIMAX_COUPLINGS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpminimax/divergences.h"
#include "dpminimax/rng.h"

namespace dpminimax {

// Joint sampler for a coupling of N finite marginals. Immutable; draws take
// an explicit generator so concurrent draws on distinct streams are safe.
class CouplingSampler {
 public:
  enum class Kind {
    kMaximalPair,
    kSharedUniformBernoulli,
    kExponentialRaces,
    kProductLift
  };

  Kind kind() const { return kind_; }
  std::string_view kind_name() const;
  int num_marginals() const { return static_cast<int>(marginals_.size()); }
  // 1 unless this is a product lift.
  int coordinates() const { return coordinates_; }
  // Per-coordinate marginal laws.
  const std::vector<DiscreteDistribution>& marginals() const {
    return marginals_;
  }

  // Writes one draw into `out`, resized to num_marginals() * coordinates()
  // and laid out marginal-major: out[i * coordinates() + c].
  void DrawInto(Rng& rng, std::vector<int64_t>& out) const;

  // Exact P(X_i != X_j) where it has a closed form (maximal pair, shared
  // uniform, and product lifts of those); nullopt otherwise.
  std::optional<Matrix> ExactDisagreement() const;

 private:
  friend absl::StatusOr<CouplingSampler> MaximalPair(
      const DiscreteDistribution&, const DiscreteDistribution&);
  friend absl::StatusOr<CouplingSampler> SharedUniformBernoulli(
      const std::vector<double>&);
  friend absl::StatusOr<CouplingSampler> ExponentialRaces(
      const std::vector<DiscreteDistribution>&);
  friend absl::StatusOr<CouplingSampler> ProductLift(const CouplingSampler&,
                                                     int);

  // Categorical sampler over atoms via inverse CDF.
  struct Categorical {
    std::vector<int64_t> atoms;
    std::vector<double> cdf;
    int64_t Draw(Rng& rng) const;
  };

  CouplingSampler() = default;

  Kind kind_ = Kind::kMaximalPair;
  std::vector<DiscreteDistribution> marginals_;
  int coordinates_ = 1;

  // Maximal pair.
  double tv_ = 0.0;
  Categorical common_;
  Categorical residual_p_;
  Categorical residual_q_;

  // Shared uniform.
  std::vector<double> ps_;

  // Exponential races: universe atoms and per-marginal weights over it.
  std::vector<int64_t> universe_;
  Matrix race_weights_;

  // Product lift.
  std::shared_ptr<const CouplingSampler> base_;
};

// Exact maximal coupling: with probability 1 - tv draw from the normalized
// pointwise minimum and output it twice, otherwise draw the two components
// independently from the normalized positive and negative residuals.
absl::StatusOr<CouplingSampler> MaximalPair(const DiscreteDistribution& p,
                                            const DiscreteDistribution& q);

// X_i = 1{U < p_i} with one shared uniform U. Each p_i in (0,1).
absl::StatusOr<CouplingSampler> SharedUniformBernoulli(
    const std::vector<double>& ps);

// One Exp(1) clock T_x per atom of the common universe; X_i is the argmin of
// T_x / p_i(x) over the support of p_i. Requires N >= 2.
absl::StatusOr<CouplingSampler> ExponentialRaces(
    const std::vector<DiscreteDistribution>& marginals);

// n independent copies of `base`; component i is the vector of i-th entries.
absl::StatusOr<CouplingSampler> ProductLift(const CouplingSampler& base,
                                            int n);

struct DisagreementMatrix {
  Matrix estimates;
  Matrix standard_errors;
  int64_t trials = 0;
};

// Full Monte-Carlo summary of a coupling sampler.
struct CouplingStats {
  // P(component i != component j) as whole vectors.
  DisagreementMatrix disagreement;
  // Mean and standard error of the Hamming distance between components.
  Matrix hamming_mean;
  Matrix hamming_stderr;
  // Empirical per-coordinate marginal frequency, pooled over coordinates,
  // aligned with each declared marginal's atom list.
  Matrix marginal_frequency;
  // L1 distance between marginal_frequency[i] and the declared marginal i.
  std::vector<double> marginal_l1_error;
};

// Deterministic for fixed (seed, trials) regardless of `workers`: each draw
// uses its own stream and partial sums are reduced in a fixed order.
absl::StatusOr<CouplingStats> SimulateCoupling(const CouplingSampler& sampler,
                                               int64_t trials, uint64_t seed,
                                               int workers = 1);

absl::StatusOr<DisagreementMatrix> EstimateDisagreement(
    const CouplingSampler& sampler, int64_t trials, uint64_t seed,
    int workers = 1);

// 2 tv / (1 + tv): the pairwise disagreement guarantee of the near-optimal
// multi-marginal coupling.
double RaceDisagreementBound(double tv);

inline constexpr int64_t kMaxLpJointSize = 10000;

// Exact minimum of sum_{i<j} P(X_i != X_j) over all couplings of the given
// marginals, by linear programming over the joint support. TooLarge when the
// product of support sizes exceeds kMaxLpJointSize.
absl::StatusOr<double> MinDisagreementLp(
    const std::vector<DiscreteDistribution>& marginals);

}  // namespace dpminimax

#endif  // DPMINIMAX_COUPLINGS_H_

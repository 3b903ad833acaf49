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

#ifndef DPMINIMAX_DIVERGENCES_H_
#define DPMINIMAX_DIVERGENCES_H_

#include <cstdint>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace dpminimax {

inline constexpr double kNormalizationTolerance = 1e-12;

// Dense row-major matrix.
using Matrix = std::vector<std::vector<double>>;

// A probability vector over distinct opaque integer atoms. Atoms are kept in
// the order given; weights are renormalized at construction.
class DiscreteDistribution {
 public:
  // Fails unless atoms are distinct, sizes agree and are >= 1, weights are
  // non-negative and finite, and their sum is within 1e-12 of one.
  static absl::StatusOr<DiscreteDistribution> Create(
      std::vector<int64_t> atoms, std::vector<double> weights);

  static DiscreteDistribution PointMass(int64_t atom);

  // Atoms {0, 1} with weights {1 - p, p}. Requires p in [0, 1].
  static absl::StatusOr<DiscreteDistribution> Bernoulli(double p);

  // Uniform over the given distinct atoms.
  static absl::StatusOr<DiscreteDistribution> Uniform(
      std::vector<int64_t> atoms);

  const std::vector<int64_t>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  int size() const { return static_cast<int>(atoms_.size()); }

  // Weight of `atom`, or 0 when the atom is absent.
  double Weight(int64_t atom) const;

 private:
  DiscreteDistribution(std::vector<int64_t> atoms, std::vector<double> weights)
      : atoms_(std::move(atoms)), weights_(std::move(weights)) {}

  std::vector<int64_t> atoms_;
  std::vector<double> weights_;
};

// Sorted union of the atoms of all distributions.
std::vector<int64_t> AtomUniverse(
    const std::vector<const DiscreteDistribution*>& dists);

// Weights of `dist` laid out over `universe` (missing atoms get 0).
std::vector<double> AlignWeights(const DiscreteDistribution& dist,
                                 const std::vector<int64_t>& universe);

double Tv(const DiscreteDistribution& p, const DiscreteDistribution& q);

// +infinity when p is not absolutely continuous with respect to q.
double Kl(const DiscreteDistribution& p, const DiscreteDistribution& q);

// Order-alpha Renyi divergence for alpha > 1; +infinity on absolute
// continuity failure. alpha = 1 is rejected (use Kl).
absl::StatusOr<double> Renyi(double alpha, const DiscreteDistribution& p,
                             const DiscreteDistribution& q);

struct BernoulliFamily {
  double p;
};

struct IsotropicGaussianFamily {
  std::vector<double> mean;
  double sigma;
};

struct UniformSupportFamily {
  double theta;
};

using ClosedFormFamily =
    std::variant<BernoulliFamily, IsotropicGaussianFamily,
                 UniformSupportFamily>;

absl::Status ValidateFamily(const ClosedFormFamily& family);

enum class DivergenceKind { kTv, kKl };

// Divergence between the n-fold products of a and b. Supported pairs:
// Bernoulli KL and TV (TV of n-fold products via the binomial sufficient
// statistic), Gaussian KL, Uniform TV. Anything else is UnsupportedPair.
absl::StatusOr<double> ClosedForm(DivergenceKind kind,
                                  const ClosedFormFamily& a,
                                  const ClosedFormFamily& b, int64_t n);

// min(1, sqrt(kl / 2)).
double PinskerTvUpper(double kl_value);

// n * kl, with +infinity propagated.
double TensorizeKl(double kl_value, int64_t n);

}  // namespace dpminimax

#endif  // DPMINIMAX_DIVERGENCES_H_

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

// Monte-Carlo risk studies: empirical risks of estimators against evaluated
// lower bounds, rate slopes, and the DP-SGML ratio study.

#ifndef DPMINIMAX_EXPERIMENTS_H_
#define DPMINIMAX_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpminimax/bounds.h"
#include "dpminimax/mechanisms.h"
#include "dpminimax/rng.h"
#include "json.hpp"

namespace dpminimax {

struct RiskEstimate {
  double risk = 0.0;
  double standard_error = 0.0;
  int64_t trials = 0;
  uint64_t seed = 0;
  int64_t n = 0;
  PrivacyConstraint constraint = NonPrivate{};
};

inline constexpr int64_t kMinRiskTrials = 100;

// Squared loss of one trial drawn from the given stream.
using TrialLoss = std::function<absl::StatusOr<double>(Rng&)>;

// Mean loss over trials. Trial t uses StreamRng(seed, cell, t); chunks of
// kTrialChunk trials are summed independently and reduced in chunk order, so
// the result is the same for every worker count.
absl::StatusOr<RiskEstimate> MonteCarloLoss(const TrialLoss& loss, int64_t n,
                                            const PrivacyConstraint& c,
                                            int64_t trials, uint64_t seed,
                                            uint64_t cell, int workers = 1);

using ScalarSampler = std::function<std::vector<double>(int64_t n, Rng&)>;
using ScalarEstimator =
    std::function<absl::StatusOr<double>(const std::vector<double>&, Rng&)>;

// (estimate - theta_star)^2 on data drawn from `sampler`.
absl::StatusOr<RiskEstimate> MonteCarloRisk(
    const ScalarSampler& sampler, double theta_star,
    const ScalarEstimator& estimator, int64_t n, const PrivacyConstraint& c,
    int64_t trials, uint64_t seed, uint64_t cell = 0, int workers = 1);

using VectorEstimator =
    std::function<absl::StatusOr<Vector>(const std::vector<Vector>&, Rng&)>;

// |estimate - theta_star|^2 on data drawn from the model at theta_star.
absl::StatusOr<RiskEstimate> MonteCarloRisk(
    const ParametricModel& model, const Vector& theta_star,
    const VectorEstimator& estimator, int64_t n, const PrivacyConstraint& c,
    int64_t trials, uint64_t seed, uint64_t cell = 0, int workers = 1);

// Least-squares slope of ln(risk) against ln(n). DegenerateInput for fewer
// than 3 points, non-positive values, or a single distinct n.
absl::StatusOr<double> RateSlope(
    const std::vector<std::pair<double, double>>& points);

struct MechanismResult {
  std::string name;
  RiskEstimate estimate;
  std::optional<double> analytic;
  bool satisfies_constraint = false;
};

struct NamedBound {
  std::string name;
  double value = 0.0;
  std::string branch;
};

struct Cell {
  int64_t n = 0;
  PrivacyConstraint constraint = NonPrivate{};
  std::vector<MechanismResult> mechanisms;
  std::vector<NamedBound> bounds;
  // Name of the bound carried into flat outputs; empty when there is none.
  std::string primary_bound;
  // Constant-free rates, not certified bounds.
  std::vector<std::pair<std::string, double>> rates;
  std::vector<std::pair<std::string, double>> extras;

  const NamedBound* FindBound(const std::string& name) const;
  const MechanismResult* FindMechanism(const std::string& name) const;
};

struct Slope {
  std::string name;
  double value = 0.0;
  std::vector<std::pair<double, double>> points;
};

struct Violation {
  int cell = 0;
  std::string mechanism;
  std::string bound;
  double risk = 0.0;
  double standard_error = 0.0;
  double value = 0.0;
};

struct ExperimentReport {
  std::string model;
  std::vector<Cell> cells;
  std::vector<Slope> slopes;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  // Report-level derived numbers (e.g. spread of the DP-SGML ratio).
  std::vector<std::pair<std::string, double>> summary;
  uint64_t seed = 0;
  int64_t trials = 0;
  // Resolved run configuration, embedded verbatim in every output.
  nlohmann::json config;

  const Slope* FindSlope(const std::string& name) const;
};

// A mechanism satisfies the cell constraint when it is the non-private
// estimator in a non-private cell, or when its own guarantee implies the
// cell's (e.g. eps-DP implies eps^2/2-zCDP).
bool Implies(const PrivacyConstraint& have, const PrivacyConstraint& want);

// Flags every (mechanism satisfying the cell constraint, bound) pair with
// risk < value - 3 stderr.
std::vector<Violation> FindViolations(const std::vector<Cell>& cells);

struct BernoulliOptions {
  std::vector<int64_t> ns = {50, 100, 200, 400};
  // Pure DP (or approximate DP with delta = 0), zCDP or NonPrivate.
  std::vector<PrivacyConstraint> constraints = {NonPrivate{}, PureDp{0.1},
                                                Zcdp{0.01}};
  double theta_star = 0.5;
  int64_t trials = 10000;
  uint64_t seed = 1;
  int workers = 1;
};

// Bounds per cell: "constant" (the closed-form constant) and "le_cam" (the
// two-point bound evaluated on the same packing). RegimeError outside
// n >= 4, n eps >= 2, n sqrt(rho) >= 2.
absl::StatusOr<ExperimentReport> RunBernoulli(const BernoulliOptions& opts);

struct UniformOptions {
  std::vector<int64_t> ns = {10, 20, 40};
  std::vector<PrivacyConstraint> constraints = {NonPrivate{}, PureDp{1.0},
                                                Zcdp{0.5}};
  double theta_star = 1.0;
  int64_t trials = 100000;
  uint64_t seed = 1;
  int workers = 1;
};

// Bounds per cell: "constant" and "le_cam" with the exact Uniform TV. The
// max estimator is run once per n and reported in every cell; it satisfies
// only the non-private constraint. RegimeError unless n eps > 1 and
// n sqrt(rho) > 1.
absl::StatusOr<ExperimentReport> RunUniform(const UniformOptions& opts);

struct GaussianOptions {
  int d = 66;
  double sigma = 1.0;
  std::vector<int64_t> ns = {500, 1000};
  std::vector<PrivacyConstraint> constraints = {NonPrivate{}, PureDp{1.0},
                                                Zcdp{0.5}};
  // Radius of a ball inside the parameter space; +inf for R^d.
  double r0 = std::numeric_limits<double>::infinity();
  int64_t trials = 2000;
  uint64_t seed = 1;
  int workers = 1;
};

// Empirical mean against KlQuadraticBounds with gamma = 1 / (2 sigma^2).
// With d < 66 no bound is evaluated.
absl::StatusOr<ExperimentReport> RunGaussian(const GaussianOptions& opts);

struct DpsgmlOptions {
  int d = 5;
  double sigma = 1.0;
  double radius = 10.0;
  double lipschitz = 10.0;
  int64_t m = 64;
  std::vector<int64_t> ns = {500};
  std::vector<double> rhos = {1e-3, 1e-2, 1e-1};
  int64_t trials = 1000;
  int64_t xi2_batches = 200;
  uint64_t seed = 1;
  int workers = 1;
};

// Gaussian-mean model on Ball(0, radius), theta* = 0. One cell per (n, rho).
// Records the DP-SGML risk, the theta_ML risk, xi^2, the rate
// max{d/(n^2 beta rho), d/(n beta)} and risk / rate. InsufficientBudget from
// the configuration is propagated.
absl::StatusOr<ExperimentReport> RunDpsgml(const DpsgmlOptions& opts);

}  // namespace dpminimax

#endif  // DPMINIMAX_EXPERIMENTS_H_

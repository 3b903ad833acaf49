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

// Private estimators: Laplace and Gaussian mean mechanisms, randomized
// response kernels, and the DP-SGML private maximum-likelihood solver.

#ifndef DPMINIMAX_MECHANISMS_H_
#define DPMINIMAX_MECHANISMS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpminimax/parameter_space.h"
#include "dpminimax/rng.h"
#include "dpminimax/verify.h"

namespace dpminimax {

// mean(data) + Laplace(1 / (n eps)). eps = inf adds no noise. The output is
// not clamped unless `clamp` is set. DomainError for data outside [0, 1].
absl::StatusOr<double> LaplaceMean(const std::vector<double>& data,
                                   double epsilon, Rng& rng,
                                   bool clamp = false);

// mean(data) + 2 / (n sqrt(rho)) N(0, 1).
absl::StatusOr<double> GaussianMean(const std::vector<double>& data,
                                    double rho, Rng& rng, bool clamp = false);

// e^eps / (1 + e^eps).
double RandomizedResponseKeep(double epsilon);

absl::StatusOr<int> RandomizedResponse(int bit, double epsilon, Rng& rng);

// Randomized response on a single bit (|X| = 2, n = 1, outputs {0, 1}).
absl::StatusOr<FiniteMechanism> RandomizedResponseKernel(double epsilon);
// Independent randomized response on each of n bits; 2^n outputs.
absl::StatusOr<FiniteMechanism> RandomizedResponseProductKernel(double epsilon,
                                                                int n);
// Number of ones after per-bit randomized response; n + 1 outputs.
absl::StatusOr<FiniteMechanism> RandomizedResponseCountKernel(double epsilon,
                                                              int n);
// Releases the dataset itself. Not private for any finite eps.
absl::StatusOr<FiniteMechanism> IdentityKernel(int alphabet, int n);
// Ignores the dataset.
absl::StatusOr<FiniteMechanism> ConstantKernel(int alphabet, int n);

// Log-likelihood model for DP-SGML. lambda and beta are the strong concavity
// and smoothness constants of theta -> E f(X, theta); lipschitz is the clip
// norm L used for per-sample gradients.
class ParametricModel {
 public:
  virtual ~ParametricModel() = default;

  virtual int dim() const = 0;
  virtual const ParameterSpace& space() const = 0;
  virtual std::vector<Vector> Sample(const Vector& theta, int64_t n,
                                     Rng& rng) const = 0;
  virtual double LogLik(const Vector& x, const Vector& theta) const = 0;
  virtual Vector Grad(const Vector& x, const Vector& theta) const = 0;
  virtual double lambda() const = 0;
  virtual double beta() const = 0;
  virtual double lipschitz() const = 0;
  // KL(P_a || P_b) <= gamma |a - b|^2.
  virtual double gamma() const = 0;
};

// X ~ N(theta, sigma^2 I_d); f(x, theta) = -|x - theta|^2 / (2 sigma^2).
// lambda = beta = 1 / sigma^2 and gamma = beta / 2.
class GaussianMeanModel : public ParametricModel {
 public:
  static absl::StatusOr<std::unique_ptr<GaussianMeanModel>> Create(
      int d, double sigma, ParameterSpace space, double lipschitz);

  int dim() const override { return d_; }
  const ParameterSpace& space() const override { return space_; }
  std::vector<Vector> Sample(const Vector& theta, int64_t n,
                             Rng& rng) const override;
  double LogLik(const Vector& x, const Vector& theta) const override;
  Vector Grad(const Vector& x, const Vector& theta) const override;
  double lambda() const override { return 1.0 / (sigma_ * sigma_); }
  double beta() const override { return 1.0 / (sigma_ * sigma_); }
  double lipschitz() const override { return lipschitz_; }
  double gamma() const override { return beta() / 2.0; }
  double sigma() const { return sigma_; }

 private:
  GaussianMeanModel(int d, double sigma, ParameterSpace space, double l)
      : d_(d), sigma_(sigma), space_(std::move(space)), lipschitz_(l) {}

  int d_;
  double sigma_;
  ParameterSpace space_;
  double lipschitz_;
};

enum class BatchMode { kWithReplacement, kFullBatch };

struct DpSgmlConfig {
  double sigma2_noise = 0.0;
  int64_t K = 1;
  double eta = 0.0;
  int64_t m = 1;
  double rho = 0.0;
  double clip = 0.0;
  double lambda = 0.0;
  // kFullBatch uses every sample once per step; only meaningful for
  // noiseless checks.
  BatchMode batch = BatchMode::kWithReplacement;
  // Overrides the random start when set.
  std::optional<Vector> theta0;
};

// sigma^2 = 4 L^2 / (rho lambda n^2), eta = 1 / (2 beta),
// K = ceil((2 beta / lambda) ln(rho n^2 / d)). InsufficientBudget when
// rho n^2 <= d e.
absl::StatusOr<DpSgmlConfig> MakeDpSgmlConfig(int64_t n, int d, double rho,
                                              const ParametricModel& model,
                                              int64_t m);

// Projected noisy stochastic gradient ascent. theta_0 is the projection of
// N(0, 2 sigma^2 / lambda I); each step samples m indices with replacement,
// averages per-sample gradients clipped to norm cfg.clip and adds
// sqrt(2 eta) N(0, sigma^2 I). NonFinite on a non-finite gradient.
absl::StatusOr<Vector> DpSgml(const std::vector<Vector>& data,
                              const ParametricModel& model,
                              const DpSgmlConfig& cfg, Rng& rng);

struct Xi2Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Monte-Carlo mean of |average batch gradient|^2 at theta_ml, batches of m
// drawn with replacement, gradients unclipped.
absl::StatusOr<Xi2Estimate> EstimateXi2(const std::vector<Vector>& data,
                                        const ParametricModel& model,
                                        const Vector& theta_ml, int64_t m,
                                        int64_t trials, Rng& rng);

// Deterministic projected gradient ascent on the average log-likelihood with
// step 1 / beta, until the step moves less than tol.
absl::StatusOr<Vector> ThetaMl(const std::vector<Vector>& data,
                               const ParametricModel& model,
                               double tol = 1e-10,
                               int64_t max_iterations = 100000);

}  // namespace dpminimax

#endif  // DPMINIMAX_MECHANISMS_H_

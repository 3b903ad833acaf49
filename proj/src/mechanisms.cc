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

#include "dpminimax/mechanisms.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "absl/strings/str_cat.h"
#include "dpminimax/errors.h"

namespace dpminimax {
namespace {

absl::StatusOr<double> UnitMean(const std::vector<double>& data) {
  if (data.empty()) return absl::InvalidArgumentError("empty data");
  double sum = 0.0;
  for (double x : data) {
    if (!(x >= 0.0 && x <= 1.0)) {
      return MakeError(ErrorKind::kDomainError,
                       absl::StrCat("value ", x, " outside [0, 1]"));
    }
    sum += x;
  }
  return sum / static_cast<double>(data.size());
}

double MaybeClamp(double x, bool clamp) {
  return clamp ? std::clamp(x, 0.0, 1.0) : x;
}

int64_t IntPow(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > FiniteMechanism::kMaxDatasets) return r;
  }
  return r;
}

absl::Status CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("eps must be > 0");
  return absl::OkStatus();
}

double Norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool AllFinite(const Vector& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

absl::StatusOr<double> LaplaceMean(const std::vector<double>& data,
                                   double epsilon, Rng& rng, bool clamp) {
  if (auto s = CheckEpsilon(epsilon); !s.ok()) return s;
  auto mean = UnitMean(data);
  if (!mean.ok()) return mean.status();
  if (std::isinf(epsilon)) return MaybeClamp(*mean, clamp);
  double scale = 1.0 / (static_cast<double>(data.size()) * epsilon);
  return MaybeClamp(*mean + rng.Laplace(scale), clamp);
}

absl::StatusOr<double> GaussianMean(const std::vector<double>& data,
                                    double rho, Rng& rng, bool clamp) {
  if (!(rho > 0.0)) return absl::InvalidArgumentError("rho must be > 0");
  auto mean = UnitMean(data);
  if (!mean.ok()) return mean.status();
  if (std::isinf(rho)) return MaybeClamp(*mean, clamp);
  double scale = 2.0 / (static_cast<double>(data.size()) * std::sqrt(rho));
  return MaybeClamp(*mean + scale * rng.Normal(), clamp);
}

double RandomizedResponseKeep(double epsilon) {
  return 1.0 / (1.0 + std::exp(-epsilon));
}

absl::StatusOr<int> RandomizedResponse(int bit, double epsilon, Rng& rng) {
  if (bit != 0 && bit != 1) return absl::InvalidArgumentError("bit not 0/1");
  if (auto s = CheckEpsilon(epsilon); !s.ok()) return s;
  return rng.Uniform() < RandomizedResponseKeep(epsilon) ? bit : 1 - bit;
}

absl::StatusOr<FiniteMechanism> RandomizedResponseKernel(double epsilon) {
  return RandomizedResponseProductKernel(epsilon, 1);
}

absl::StatusOr<FiniteMechanism> RandomizedResponseProductKernel(double epsilon,
                                                                int n) {
  if (auto s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (IntPow(2, n) > FiniteMechanism::kMaxDatasets) {
    return MakeError(ErrorKind::kTooLarge, "2^n exceeds the dataset cap");
  }
  const int size = 1 << n;
  const double keep = RandomizedResponseKeep(epsilon);
  std::vector<std::string> labels;
  for (int o = 0; o < size; ++o) {
    std::string s;
    for (int k = n - 1; k >= 0; --k) s += ((o >> k) & 1) ? '1' : '0';
    labels.push_back(s);
  }
  Matrix kernel(size, std::vector<double>(size, 1.0));
  for (int x = 0; x < size; ++x) {
    for (int o = 0; o < size; ++o) {
      for (int k = 0; k < n; ++k) {
        kernel[x][o] *= (((x ^ o) >> k) & 1) ? 1.0 - keep : keep;
      }
    }
  }
  return FiniteMechanism::Create(2, n, std::move(labels), std::move(kernel));
}

absl::StatusOr<FiniteMechanism> RandomizedResponseCountKernel(double epsilon,
                                                              int n) {
  auto product = RandomizedResponseProductKernel(epsilon, n);
  if (!product.ok()) return product.status();
  std::vector<std::string> labels;
  for (int c = 0; c <= n; ++c) labels.push_back(std::to_string(c));
  Matrix kernel(product->num_datasets(), std::vector<double>(n + 1, 0.0));
  for (int x = 0; x < product->num_datasets(); ++x) {
    for (int o = 0; o < product->num_outputs(); ++o) {
      kernel[x][std::popcount(static_cast<unsigned>(o))] += product->Row(x)[o];
    }
  }
  return FiniteMechanism::Create(2, n, std::move(labels), std::move(kernel));
}

absl::StatusOr<FiniteMechanism> IdentityKernel(int alphabet, int n) {
  if (alphabet < 1 || n < 1) {
    return absl::InvalidArgumentError("alphabet and n must be >= 1");
  }
  int64_t size = IntPow(alphabet, n);
  if (size > FiniteMechanism::kMaxDatasets) {
    return MakeError(ErrorKind::kTooLarge, "|X|^n exceeds the dataset cap");
  }
  std::vector<std::string> labels;
  Matrix kernel(size, std::vector<double>(size, 0.0));
  for (int64_t x = 0; x < size; ++x) {
    std::string s;
    for (int64_t r = x, k = 0; k < n; ++k, r /= alphabet) {
      s.insert(s.begin(), static_cast<char>('0' + r % alphabet));
    }
    labels.push_back(s);
    kernel[x][x] = 1.0;
  }
  return FiniteMechanism::Create(alphabet, n, std::move(labels),
                                 std::move(kernel));
}

absl::StatusOr<FiniteMechanism> ConstantKernel(int alphabet, int n) {
  if (alphabet < 1 || n < 1) {
    return absl::InvalidArgumentError("alphabet and n must be >= 1");
  }
  int64_t size = IntPow(alphabet, n);
  if (size > FiniteMechanism::kMaxDatasets) {
    return MakeError(ErrorKind::kTooLarge, "|X|^n exceeds the dataset cap");
  }
  Matrix kernel(size, std::vector<double>(1, 1.0));
  return FiniteMechanism::Create(alphabet, n, {"c"}, std::move(kernel));
}

absl::StatusOr<std::unique_ptr<GaussianMeanModel>> GaussianMeanModel::Create(
    int d, double sigma, ParameterSpace space, double lipschitz) {
  if (d < 1) return absl::InvalidArgumentError("d must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError("sigma must be finite and > 0");
  }
  if (!(lipschitz > 0.0)) return absl::InvalidArgumentError("L must be > 0");
  if (auto s = ValidateSpace(space); !s.ok()) return s;
  if (SpaceDimension(space) != d) {
    return MakeError(ErrorKind::kLengthMismatch, "space dimension differs");
  }
  return std::unique_ptr<GaussianMeanModel>(
      new GaussianMeanModel(d, sigma, std::move(space), lipschitz));
}

std::vector<Vector> GaussianMeanModel::Sample(const Vector& theta, int64_t n,
                                              Rng& rng) const {
  std::vector<Vector> out(n, Vector(d_));
  for (auto& x : out) {
    for (int k = 0; k < d_; ++k) x[k] = theta[k] + sigma_ * rng.Normal();
  }
  return out;
}

double GaussianMeanModel::LogLik(const Vector& x, const Vector& theta) const {
  return -SquaredDistance(x, theta) / (2.0 * sigma_ * sigma_);
}

Vector GaussianMeanModel::Grad(const Vector& x, const Vector& theta) const {
  Vector g(d_);
  for (int k = 0; k < d_; ++k) g[k] = (x[k] - theta[k]) / (sigma_ * sigma_);
  return g;
}

absl::StatusOr<DpSgmlConfig> MakeDpSgmlConfig(int64_t n, int d, double rho,
                                              const ParametricModel& model,
                                              int64_t m) {
  if (n < 1 || d < 1 || m < 1) {
    return absl::InvalidArgumentError("n, d and m must be >= 1");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    return absl::InvalidArgumentError("rho must be finite and > 0");
  }
  const double lambda = model.lambda();
  const double beta = model.beta();
  const double l = model.lipschitz();
  if (!(lambda > 0.0 && lambda <= beta) || !(l > 0.0)) {
    return absl::InvalidArgumentError("model needs 0 < lambda <= beta, L > 0");
  }
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  if (rho * nn <= d * std::numbers::e) {
    return MakeError(ErrorKind::kInsufficientBudget,
                     absl::StrCat("rho n^2 = ", rho * nn, " <= d e"));
  }
  DpSgmlConfig cfg;
  cfg.sigma2_noise = 4.0 * l * l / (rho * lambda * nn);
  cfg.eta = 1.0 / (2.0 * beta);
  cfg.K = static_cast<int64_t>(
      std::ceil((2.0 * beta / lambda) * std::log(rho * nn / d)));
  cfg.K = std::max<int64_t>(cfg.K, 1);
  cfg.m = m;
  cfg.rho = rho;
  cfg.clip = l;
  cfg.lambda = lambda;
  return cfg;
}

absl::StatusOr<Vector> DpSgml(const std::vector<Vector>& data,
                              const ParametricModel& model,
                              const DpSgmlConfig& cfg, Rng& rng) {
  const int d = model.dim();
  if (data.empty()) return absl::InvalidArgumentError("empty data");
  for (const auto& x : data) {
    if (static_cast<int>(x.size()) != d) {
      return MakeError(ErrorKind::kLengthMismatch, "data point dimension");
    }
  }
  if (cfg.K < 1 || cfg.m < 1 || !(cfg.eta > 0.0) || !(cfg.sigma2_noise >= 0.0)) {
    return absl::InvalidArgumentError("inconsistent DP-SGML config");
  }
  const double sigma = std::sqrt(cfg.sigma2_noise);
  Vector theta(d, 0.0);
  if (cfg.theta0.has_value()) {
    if (static_cast<int>(cfg.theta0->size()) != d) {
      return MakeError(ErrorKind::kLengthMismatch, "theta0 dimension");
    }
    theta = Project(model.space(), *cfg.theta0);
  } else {
    const double sd = std::sqrt(2.0 * cfg.sigma2_noise / cfg.lambda);
    for (int k = 0; k < d; ++k) theta[k] = sd * rng.Normal();
    theta = Project(model.space(), theta);
  }
  const int64_t n = static_cast<int64_t>(data.size());
  const bool full = cfg.batch == BatchMode::kFullBatch;
  const int64_t batch = full ? n : cfg.m;
  const double step_noise = std::sqrt(2.0 * cfg.eta) * sigma;
  Vector avg(d);
  for (int64_t step = 0; step < cfg.K; ++step) {
    std::fill(avg.begin(), avg.end(), 0.0);
    for (int64_t b = 0; b < batch; ++b) {
      const Vector& x =
          full ? data[b] : data[rng.UniformIndex(static_cast<uint64_t>(n))];
      Vector g = model.Grad(x, theta);
      if (!AllFinite(g)) {
        return MakeError(ErrorKind::kNonFinite, "gradient is not finite");
      }
      double norm = Norm(g);
      double scale = norm > cfg.clip ? cfg.clip / norm : 1.0;
      for (int k = 0; k < d; ++k) avg[k] += scale * g[k];
    }
    for (int k = 0; k < d; ++k) {
      theta[k] += cfg.eta * avg[k] / static_cast<double>(batch);
      if (step_noise > 0.0) theta[k] += step_noise * rng.Normal();
    }
    theta = Project(model.space(), theta);
  }
  return theta;
}

absl::StatusOr<Xi2Estimate> EstimateXi2(const std::vector<Vector>& data,
                                        const ParametricModel& model,
                                        const Vector& theta_ml, int64_t m,
                                        int64_t trials, Rng& rng) {
  if (data.empty()) return absl::InvalidArgumentError("empty data");
  if (m < 1 || trials < 2) {
    return absl::InvalidArgumentError("need m >= 1 and trials >= 2");
  }
  const int d = model.dim();
  const uint64_t n = data.size();
  double sum = 0.0;
  double sum_sq = 0.0;
  Vector avg(d);
  for (int64_t t = 0; t < trials; ++t) {
    std::fill(avg.begin(), avg.end(), 0.0);
    for (int64_t b = 0; b < m; ++b) {
      Vector g = model.Grad(data[rng.UniformIndex(n)], theta_ml);
      for (int k = 0; k < d; ++k) avg[k] += g[k];
    }
    double v = 0.0;
    for (int k = 0; k < d; ++k) {
      double a = avg[k] / static_cast<double>(m);
      v += a * a;
    }
    sum += v;
    sum_sq += v * v;
  }
  const double tt = static_cast<double>(trials);
  Xi2Estimate est;
  est.mean = sum / tt;
  double var = std::max(0.0, (sum_sq - tt * est.mean * est.mean) / (tt - 1.0));
  est.standard_error = std::sqrt(var / tt);
  return est;
}

absl::StatusOr<Vector> ThetaMl(const std::vector<Vector>& data,
                               const ParametricModel& model, double tol,
                               int64_t max_iterations) {
  if (data.empty()) return absl::InvalidArgumentError("empty data");
  const int d = model.dim();
  const double step = 1.0 / model.beta();
  Vector theta = Project(model.space(), Vector(d, 0.0));
  Vector avg(d);
  for (int64_t it = 0; it < max_iterations; ++it) {
    std::fill(avg.begin(), avg.end(), 0.0);
    for (const auto& x : data) {
      Vector g = model.Grad(x, theta);
      if (!AllFinite(g)) {
        return MakeError(ErrorKind::kNonFinite, "gradient is not finite");
      }
      for (int k = 0; k < d; ++k) avg[k] += g[k];
    }
    Vector next = theta;
    for (int k = 0; k < d; ++k) {
      next[k] += step * avg[k] / static_cast<double>(data.size());
    }
    next = Project(model.space(), next);
    double moved = std::sqrt(SquaredDistance(next, theta));
    theta = std::move(next);
    if (moved < tol) return theta;
  }
  return theta;
}

}  // namespace dpminimax

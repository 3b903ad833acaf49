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

#include "dpminimax/divergences.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "absl/strings/str_cat.h"
#include "dpminimax/errors.h"

namespace dpminimax {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::pair<std::vector<double>, std::vector<double>> Align(
    const DiscreteDistribution& p, const DiscreteDistribution& q) {
  std::vector<int64_t> universe = AtomUniverse({&p, &q});
  return {AlignWeights(p, universe), AlignWeights(q, universe)};
}

double LogSumExp(const std::vector<double>& terms) {
  double m = -kInf;
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

// TV between Binomial(n, p) and Binomial(n, q), which equals the TV of the
// n-fold Bernoulli products (the count is sufficient).
double BinomialTv(int64_t n, double p, double q) {
  double sum = 0.0;
  for (int64_t k = 0; k <= n; ++k) {
    double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                        std::lgamma(n - k + 1.0);
    double a = std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
    double b = std::exp(log_choose + k * std::log(q) + (n - k) * std::log1p(-q));
    sum += std::abs(a - b);
  }
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double BernoulliKl(double a, double b) {
  double kl = 0.0;
  if (a > 0.0) kl += a * std::log(a / b);
  if (a < 1.0) kl += (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
  return std::max(kl, 0.0);
}

absl::Status UnsupportedPair(absl::string_view what) {
  return MakeError(ErrorKind::kUnsupportedPair, what);
}

}  // namespace

absl::StatusOr<DiscreteDistribution> DiscreteDistribution::Create(
    std::vector<int64_t> atoms, std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size()) {
    return absl::InvalidArgumentError(
        "atoms and weights must have equal length >= 1");
  }
  std::set<int64_t> seen(atoms.begin(), atoms.end());
  if (seen.size() != atoms.size()) {
    return absl::InvalidArgumentError("atoms must be distinct");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      return absl::InvalidArgumentError("weights must be finite and >= 0");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("weights sum to ", total, ", not 1"));
  }
  for (double& w : weights) w /= total;
  return DiscreteDistribution(std::move(atoms), std::move(weights));
}

DiscreteDistribution DiscreteDistribution::PointMass(int64_t atom) {
  return DiscreteDistribution({atom}, {1.0});
}

absl::StatusOr<DiscreteDistribution> DiscreteDistribution::Bernoulli(
    double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError("Bernoulli parameter must be in [0,1]");
  }
  return DiscreteDistribution({0, 1}, {1.0 - p, p});
}

absl::StatusOr<DiscreteDistribution> DiscreteDistribution::Uniform(
    std::vector<int64_t> atoms) {
  if (atoms.empty()) return absl::InvalidArgumentError("no atoms");
  std::vector<double> weights(atoms.size(), 1.0 / atoms.size());
  return Create(std::move(atoms), std::move(weights));
}

double DiscreteDistribution::Weight(int64_t atom) const {
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == atom) return weights_[i];
  }
  return 0.0;
}

std::vector<int64_t> AtomUniverse(
    const std::vector<const DiscreteDistribution*>& dists) {
  std::vector<int64_t> universe;
  for (const DiscreteDistribution* d : dists) {
    universe.insert(universe.end(), d->atoms().begin(), d->atoms().end());
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()),
                 universe.end());
  return universe;
}

std::vector<double> AlignWeights(const DiscreteDistribution& dist,
                                 const std::vector<int64_t>& universe) {
  std::vector<double> out(universe.size(), 0.0);
  for (int i = 0; i < dist.size(); ++i) {
    auto it = std::lower_bound(universe.begin(), universe.end(),
                               dist.atoms()[i]);
    if (it != universe.end() && *it == dist.atoms()[i]) {
      out[it - universe.begin()] = dist.weights()[i];
    }
  }
  return out;
}

double Tv(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  auto [a, b] = Align(p, q);
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double Kl(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  auto [a, b] = Align(p, q);
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (b[i] == 0.0) return kInf;
    sum += a[i] * std::log(a[i] / b[i]);
  }
  return std::max(sum, 0.0);
}

absl::StatusOr<double> Renyi(double alpha, const DiscreteDistribution& p,
                             const DiscreteDistribution& q) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    return absl::InvalidArgumentError("Renyi order must be finite and > 1");
  }
  auto [a, b] = Align(p, q);
  std::vector<double> terms;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (b[i] == 0.0) return kInf;
    terms.push_back(alpha * std::log(a[i]) + (1.0 - alpha) * std::log(b[i]));
  }
  return std::max(LogSumExp(terms) / (alpha - 1.0), 0.0);
}

absl::Status ValidateFamily(const ClosedFormFamily& family) {
  if (const auto* b = std::get_if<BernoulliFamily>(&family)) {
    if (!(b->p > 0.0 && b->p < 1.0)) {
      return absl::InvalidArgumentError("Bernoulli p must be in (0,1)");
    }
  } else if (const auto* g = std::get_if<IsotropicGaussianFamily>(&family)) {
    if (g->mean.empty()) {
      return absl::InvalidArgumentError("Gaussian dimension must be >= 1");
    }
    if (!(g->sigma > 0.0) || !std::isfinite(g->sigma)) {
      return absl::InvalidArgumentError("Gaussian sigma must be > 0");
    }
    for (double m : g->mean) {
      if (!std::isfinite(m)) {
        return absl::InvalidArgumentError("Gaussian mean must be finite");
      }
    }
  } else {
    double t = std::get<UniformSupportFamily>(family).theta;
    if (!(t > 0.0 && t <= 1.0)) {
      return absl::InvalidArgumentError("Uniform theta must be in (0,1]");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> ClosedForm(DivergenceKind kind,
                                  const ClosedFormFamily& a,
                                  const ClosedFormFamily& b, int64_t n) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (a.index() != b.index()) return UnsupportedPair("families differ");
  if (absl::Status s = ValidateFamily(a); !s.ok()) return s;
  if (absl::Status s = ValidateFamily(b); !s.ok()) return s;

  if (const auto* ba = std::get_if<BernoulliFamily>(&a)) {
    double p = ba->p;
    double q = std::get<BernoulliFamily>(b).p;
    if (kind == DivergenceKind::kKl) return TensorizeKl(BernoulliKl(p, q), n);
    if (p == q) return 0.0;
    if (n == 1) return std::abs(p - q);
    return BinomialTv(n, p, q);
  }
  if (const auto* ga = std::get_if<IsotropicGaussianFamily>(&a)) {
    const auto& gb = std::get<IsotropicGaussianFamily>(b);
    if (kind != DivergenceKind::kKl) {
      return UnsupportedPair("Gaussian TV has no closed form here");
    }
    if (ga->mean.size() != gb.mean.size() || ga->sigma != gb.sigma) {
      return UnsupportedPair("Gaussian pair must share dimension and sigma");
    }
    double sq = 0.0;
    for (size_t i = 0; i < ga->mean.size(); ++i) {
      double diff = gb.mean[i] - ga->mean[i];
      sq += diff * diff;
    }
    return TensorizeKl(sq / (2.0 * ga->sigma * ga->sigma), n);
  }
  double ta = std::get<UniformSupportFamily>(a).theta;
  double tb = std::get<UniformSupportFamily>(b).theta;
  if (kind != DivergenceKind::kTv) {
    return UnsupportedPair("Uniform KL is not provided");
  }
  double ratio = std::min(ta, tb) / std::max(ta, tb);
  return 1.0 - std::pow(ratio, static_cast<double>(n));
}

double PinskerTvUpper(double kl_value) {
  return std::min(1.0, std::sqrt(kl_value / 2.0));
}

double TensorizeKl(double kl_value, int64_t n) {
  if (std::isinf(kl_value)) return kl_value;
  return static_cast<double>(n) * kl_value;
}

}  // namespace dpminimax

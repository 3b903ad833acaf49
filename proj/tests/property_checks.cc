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

#include "property_checks.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpminimax/bounds.h"

namespace dpminimax::testing {
namespace {

DiscreteDistribution Product(const DiscreteDistribution& p, int n) {
  std::vector<int64_t> atoms = {0};
  std::vector<double> weights = {1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<int64_t> next_atoms;
    std::vector<double> next_weights;
    for (size_t a = 0; a < atoms.size(); ++a) {
      for (int b = 0; b < p.size(); ++b) {
        next_atoms.push_back(atoms[a] * 8 + p.atoms()[b]);
        next_weights.push_back(weights[a] * p.weights()[b]);
      }
    }
    atoms = std::move(next_atoms);
    weights = std::move(next_weights);
  }
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;
  return *DiscreteDistribution::Create(std::move(atoms), std::move(weights));
}

bool SameBits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool SameResult(const BoundResult& a, const BoundResult& b) {
  if (!SameBits(a.value, b.value) || !SameBits(a.raw, b.raw) ||
      a.branch != b.branch || a.branches.size() != b.branches.size()) {
    return false;
  }
  for (size_t i = 0; i < a.branches.size(); ++i) {
    if (a.branches[i].name != b.branches[i].name ||
        !SameBits(a.branches[i].raw, b.branches[i].raw)) {
      return false;
    }
  }
  return true;
}

Matrix RandomTvs(Rng& rng, int num) {
  Matrix m(num, std::vector<double>(num, 0.0));
  for (int i = 0; i < num; ++i) {
    for (int j = i + 1; j < num; ++j) m[i][j] = m[j][i] = rng.Uniform();
  }
  return m;
}

Matrix ScaleTvs(const Matrix& m, double s) {
  Matrix out = m;
  for (auto& row : out) {
    for (double& v : row) v = std::min(1.0, v * s);
  }
  return out;
}

// Fails the outcome when `later` exceeds `earlier` beyond rounding.
void ExpectNonIncreasing(CheckOutcome& out, double earlier, double later,
                         const std::string& what) {
  if (later > earlier + 1e-14) {
    out.Fail(absl::StrCat(what, ": ", earlier, " -> ", later));
  }
}

double Value(const absl::StatusOr<BoundResult>& r) {
  return r.ok() ? r->value : std::nan("");
}

}  // namespace

DiscreteDistribution RandomDistribution(Rng& rng, int max_atoms,
                                        bool allow_zeros) {
  const int k = 1 + static_cast<int>(rng.UniformIndex(max_atoms));
  std::vector<int64_t> pool = {0, 1, 2, 3, 4, 5, 6, 7};
  for (int i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng.UniformIndex(pool.size() - i)]);
  }
  std::vector<int64_t> atoms(pool.begin(), pool.begin() + k);
  std::vector<double> weights(k);
  double sum = 0.0;
  for (double& w : weights) {
    w = (allow_zeros && rng.Uniform() < 0.2) ? 0.0 : rng.Exponential();
    sum += w;
  }
  if (sum == 0.0) {
    weights[0] = 1.0;
    sum = 1.0;
  }
  for (double& w : weights) w /= sum;
  return *DiscreteDistribution::Create(std::move(atoms), std::move(weights));
}

CheckOutcome CheckPinsker(uint64_t seed, int instances) {
  CheckOutcome out;
  for (int i = 0; i < instances; ++i, ++out.instances) {
    Rng rng = StreamRng(seed, 1, i);
    auto p = RandomDistribution(rng, 6, true);
    auto q = RandomDistribution(rng, 6, true);
    const double tv = Tv(p, q);
    const double kl = Kl(p, q);
    if (!(tv >= 0.0 && tv <= 1.0) || tv != Tv(q, p) || !(kl >= 0.0)) {
      out.Fail(absl::StrCat("instance ", i, ": tv=", tv, " kl=", kl));
    } else if (tv > PinskerTvUpper(kl) + 1e-12) {
      out.Fail(absl::StrCat("instance ", i, ": tv=", tv, " > pinsker(",
                            kl, ")"));
    }
    if (Kl(p, p) > 1e-10) out.Fail(absl::StrCat("instance ", i, ": kl(p,p)"));
  }
  return out;
}

CheckOutcome CheckRenyiMonotone(uint64_t seed, int instances) {
  CheckOutcome out;
  for (int i = 0; i < instances; ++i, ++out.instances) {
    Rng rng = StreamRng(seed, 2, i);
    auto p = RandomDistribution(rng, 6, true);
    auto q = RandomDistribution(rng, 6, true);
    double prev = Kl(p, q);
    for (double alpha : {1.5, 2.0, 4.0, 8.0}) {
      auto d = Renyi(alpha, p, q);
      if (!d.ok()) {
        out.Fail(absl::StrCat("instance ", i, ": ", d.status().ToString()));
        break;
      }
      const double tol = 1e-12 * std::max(1.0, std::abs(*d));
      if (!(prev <= *d + tol) && !(std::isinf(prev) && std::isinf(*d))) {
        out.Fail(absl::StrCat("instance ", i, " alpha=", alpha, ": ", prev,
                              " > ", *d));
        break;
      }
      prev = *d;
    }
  }
  return out;
}

CheckOutcome CheckKlTensorization(uint64_t seed, int instances) {
  CheckOutcome out;
  for (int i = 0; i < instances; ++i, ++out.instances) {
    Rng rng = StreamRng(seed, 3, i);
    auto p = RandomDistribution(rng, 4, false);
    // q shares p's atoms so the KL stays finite.
    std::vector<double> w(p.size());
    double sum = 0.0;
    for (double& v : w) sum += v = rng.Exponential();
    for (double& v : w) v /= sum;
    auto q = *DiscreteDistribution::Create(p.atoms(), w);
    const int n = 1 + static_cast<int>(rng.UniformIndex(3));
    const double direct = Kl(Product(p, n), Product(q, n));
    const double tensor = TensorizeKl(Kl(p, q), n);
    if (std::abs(direct - tensor) > 1e-10 * std::max(1.0, tensor)) {
      out.Fail(absl::StrCat("instance ", i, " n=", n, ": ", direct, " vs ",
                            tensor));
    }
    const double a = 0.02 + 0.96 * rng.Uniform();
    const double b = 0.02 + 0.96 * rng.Uniform();
    auto closed = ClosedForm(DivergenceKind::kKl, BernoulliFamily{a},
                             BernoulliFamily{b}, n);
    const double discrete =
        n * Kl(*DiscreteDistribution::Bernoulli(a),
               *DiscreteDistribution::Bernoulli(b));
    if (!closed.ok() || std::abs(*closed - discrete) > 1e-12) {
      out.Fail(absl::StrCat("instance ", i, ": bernoulli closed form"));
    }
    auto closed_tv = ClosedForm(DivergenceKind::kTv, BernoulliFamily{a},
                                BernoulliFamily{b}, 1);
    if (!closed_tv.ok() ||
        std::abs(*closed_tv - Tv(*DiscreteDistribution::Bernoulli(a),
                                 *DiscreteDistribution::Bernoulli(b))) >
            1e-12) {
      out.Fail(absl::StrCat("instance ", i, ": bernoulli closed-form tv"));
    }
  }
  return out;
}

CheckOutcome CheckBoundMonotonicity(uint64_t seed, int instances) {
  CheckOutcome out;
  const TestForm forms[] = {TestForm::kJoint, TestForm::kProduct};
  for (int i = 0; i < instances; ++i, ++out.instances) {
    Rng rng = StreamRng(seed, 4, i);
    const double eps = std::exp(-4.0 + 6.0 * rng.Uniform());
    const double delta = 0.2 * rng.Uniform();
    const double rho = std::exp(-8.0 + 8.0 * rng.Uniform());
    const int64_t n = 1 + static_cast<int64_t>(rng.UniformIndex(50));
    const double tv = rng.Uniform();
    const double grow = 1.0 + rng.Uniform();
    const PrivacyConstraint all[] = {PureDp{eps}, ApproxDp{eps, delta},
                                     Zcdp{rho}};
    const std::string tag = absl::StrCat("instance ", i, " ");

    for (TestForm form : forms) {
      for (const PrivacyConstraint& c : all) {
        const std::string what = tag + DescribeConstraint(c);
        const double base = Value(LeCamPrivate(c, n, tv, form));
        ExpectNonIncreasing(
            out, base, Value(LeCamPrivate(c, n, std::min(1.0, tv * grow), form)),
            what + " le_cam tv");
        ExpectNonIncreasing(out, base, Value(LeCamPrivate(c, n + 1, tv, form)),
                            what + " le_cam n");
      }
      ExpectNonIncreasing(
          out, Value(LeCamPrivate(PureDp{eps}, n, tv, form)),
          Value(LeCamPrivate(PureDp{eps * grow}, n, tv, form)),
          tag + "le_cam eps");
      ExpectNonIncreasing(out, Value(LeCamPrivate(Zcdp{rho}, n, tv, form)),
                          Value(LeCamPrivate(Zcdp{rho * grow}, n, tv, form)),
                          tag + "le_cam rho");
    }

    const int big_n = 2 + static_cast<int>(rng.UniformIndex(6));
    const Matrix tvs = RandomTvs(rng, big_n);
    for (TestForm form : forms) {
      for (const PrivacyConstraint& c : all) {
        const std::string what = tag + DescribeConstraint(c);
        auto r = FanoPrivate(c, n, big_n, tvs, std::nullopt, form);
        if (!r.ok()) {
          out.Fail(what + " fano: " + std::string(r.status().ToString()));
          continue;
        }
        for (const auto& b : r->branches) {
          if (r->raw < b.raw) out.Fail(what + " fano max over branches");
        }
        if (!(r->value >= 0.0 && r->value <= 1.0)) {
          out.Fail(what + " fano value outside [0, 1]");
        }
        ExpectNonIncreasing(
            out, r->value,
            Value(FanoPrivate(c, n, big_n, ScaleTvs(tvs, grow), std::nullopt,
                              form)),
            what + " fano tv");
        ExpectNonIncreasing(
            out, r->value,
            Value(FanoPrivate(c, n + 1, big_n, tvs, std::nullopt, form)),
            what + " fano n");
      }
      ExpectNonIncreasing(
          out, Value(FanoPrivate(PureDp{eps}, n, big_n, tvs, std::nullopt, form)),
          Value(FanoPrivate(PureDp{eps * grow}, n, big_n, tvs, std::nullopt,
                            form)),
          tag + "fano eps");
      ExpectNonIncreasing(
          out, Value(FanoPrivate(Zcdp{rho}, n, big_n, tvs, std::nullopt, form)),
          Value(FanoPrivate(Zcdp{rho * grow}, n, big_n, tvs, std::nullopt,
                            form)),
          tag + "fano rho");
    }
  }
  return out;
}

CheckOutcome CheckPureApproxEquality(uint64_t seed, int instances) {
  CheckOutcome out;
  for (int i = 0; i < instances; ++i, ++out.instances) {
    Rng rng = StreamRng(seed, 5, i);
    const double eps = std::exp(-5.0 + 8.0 * rng.Uniform());
    const int64_t n = 1 + static_cast<int64_t>(rng.UniformIndex(100));
    const double tv = rng.Uniform();
    const int big_n = 2 + static_cast<int>(rng.UniformIndex(8));
    const Matrix tvs = RandomTvs(rng, big_n);
    for (TestForm form : {TestForm::kJoint, TestForm::kProduct}) {
      auto a = LeCamPrivate(PureDp{eps}, n, tv, form);
      auto b = LeCamPrivate(ApproxDp{eps, 0.0}, n, tv, form);
      if (!a.ok() || !b.ok() || !SameResult(*a, *b)) {
        out.Fail(absl::StrCat("instance ", i, ": le_cam eps=", eps));
      }
      auto fa = FanoPrivate(PureDp{eps}, n, big_n, tvs, std::nullopt, form);
      auto fb = FanoPrivate(ApproxDp{eps, 0.0}, n, big_n, tvs, std::nullopt,
                            form);
      if (!fa.ok() || !fb.ok() || !SameResult(*fa, *fb)) {
        out.Fail(absl::StrCat("instance ", i, ": fano eps=", eps));
      }
    }
  }
  return out;
}

}  // namespace dpminimax::testing

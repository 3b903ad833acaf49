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

#ifndef DPMINIMAX_BOUNDS_H_
#define DPMINIMAX_BOUNDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpminimax/divergences.h"

namespace dpminimax {

struct NonPrivate {};
struct PureDp {
  double epsilon;
};
struct ApproxDp {
  double epsilon;
  double delta;
};
struct Zcdp {
  double rho;
};

using PrivacyConstraint = std::variant<NonPrivate, PureDp, ApproxDp, Zcdp>;

// epsilon > 0 (finite or +inf), delta in [0,1), rho > 0.
absl::Status ValidateConstraint(const PrivacyConstraint& c);

// "none", "pure_dp", "approx_dp" or "zcdp".
std::string ConstraintKind(const PrivacyConstraint& c);

// Human-readable form, e.g. "approx_dp(eps=0.5, delta=0.01)".
std::string DescribeConstraint(const PrivacyConstraint& c);

// True for PureDp and ApproxDp.
bool IsDpFamily(const PrivacyConstraint& c);

// (epsilon, delta) of a DP-family constraint; PureDp maps to delta = 0.
struct DpParams {
  double epsilon;
  double delta;
};
std::optional<DpParams> AsDp(const PrivacyConstraint& c);

struct BranchValue {
  std::string name;
  double raw;
};

struct BoundResult {
  double value = 0.0;  // clamp(raw, 0, 1)
  double raw = 0.0;
  std::string branch;
  int64_t n = 0;
  int num_hypotheses = 2;
  PrivacyConstraint constraint = NonPrivate{};
  // Every evaluated branch, including the winner.
  std::vector<BranchValue> branches;
};

enum class TestForm { kJoint, kProduct };

// (1 - tv) / 2.
absl::StatusOr<BoundResult> LeCamClassical(double tv);

// 1 - (1 + mean(kls)) / ln N.
absl::StatusOr<BoundResult> FanoClassical(int num_hypotheses,
                                          const std::vector<double>& kls);

// Two-point test bound under a privacy constraint. For kJoint, tv is the TV
// between the laws on X^n; for kProduct it is the TV between the marginals.
// kProduct with NonPrivate is FormMismatch.
absl::StatusOr<BoundResult> LeCamPrivate(const PrivacyConstraint& c,
                                         int64_t n, double tv, TestForm form);

// N-ary test bound. tvs is the N x N matrix of pairwise TVs (joint laws for
// kJoint, marginals for kProduct); kls, when given, are KL(P_i || Q) of the
// joint laws and enable the classical branch. Returns the max over all
// applicable branches.
absl::StatusOr<BoundResult> FanoPrivate(
    const PrivacyConstraint& c, int64_t n, int num_hypotheses,
    const Matrix& tvs, const std::optional<std::vector<double>>& kls,
    TestForm form);

// phi_of_omega * test_bound.value.
absl::StatusOr<double> MinimaxFromPacking(double phi_of_omega,
                                          const BoundResult& test_bound);

struct MinimaxBound {
  double value = 0.0;
  // "radius" when r0/sqrt(d) is the active minimum, else "statistical" or
  // "privacy" for the term that wins the outer max.
  std::string branch;
};

// Minimax squared-error lower bounds for families with
// KL(P_a || P_b) <= gamma |a - b|^2 on a space containing a ball of radius r0
// (r0 may be +inf). Requires d >= 66; zCDP requires rho < 1. ApproxDp with
// delta > 0 is not covered.
absl::StatusOr<MinimaxBound> KlQuadraticBounds(int64_t d, int64_t n,
                                               double gamma, double r0,
                                               const PrivacyConstraint& c);

}  // namespace dpminimax

#endif  // DPMINIMAX_BOUNDS_H_

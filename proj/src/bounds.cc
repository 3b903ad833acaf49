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

#include "dpminimax/bounds.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpminimax/errors.h"

namespace dpminimax {
namespace {

// x * y with 0 * inf taken as 0 (e.g. n*eps*sum(t) with eps = inf, t = 0).
double SafeMul(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  return x * y;
}

absl::Status CheckTv(double tv) {
  if (!(tv >= 0.0 && tv <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tv must be in [0,1], got ", tv));
  }
  return absl::OkStatus();
}

// Picks the largest branch; ties go to the earliest listed.
BoundResult Finish(std::vector<BranchValue> branches, int64_t n, int num,
                   const PrivacyConstraint& c) {
  BoundResult r;
  size_t best = 0;
  for (size_t i = 1; i < branches.size(); ++i) {
    if (branches[i].raw > branches[best].raw) best = i;
  }
  r.raw = branches[best].raw;
  r.branch = branches[best].name;
  r.value = std::isnan(r.raw) ? 0.0 : std::clamp(r.raw, 0.0, 1.0);
  r.n = n;
  r.num_hypotheses = num;
  r.constraint = c;
  r.branches = std::move(branches);
  return r;
}

// Sum over ordered pairs of t = 2 tv / (1 + tv); the diagonal adds 0.
std::vector<double> DisagreementTerms(const Matrix& tvs) {
  std::vector<double> t;
  for (size_t i = 0; i < tvs.size(); ++i) {
    for (size_t j = 0; j < tvs.size(); ++j) {
      if (i == j) continue;
      t.push_back(2.0 * tvs[i][j] / (1.0 + tvs[i][j]));
    }
  }
  return t;
}

absl::Status CheckTvMatrix(const Matrix& tvs, int num) {
  if (static_cast<int>(tvs.size()) != num) {
    return MakeError(ErrorKind::kShapeMismatch,
                     absl::StrCat("expected ", num, " rows, got ", tvs.size()));
  }
  for (const auto& row : tvs) {
    if (static_cast<int>(row.size()) != num) {
      return MakeError(ErrorKind::kShapeMismatch, "tv matrix is not square");
    }
  }
  for (int i = 0; i < num; ++i) {
    if (tvs[i][i] != 0.0) {
      return absl::InvalidArgumentError("tv matrix diagonal must be zero");
    }
    for (int j = 0; j < num; ++j) {
      if (absl::Status s = CheckTv(tvs[i][j]); !s.ok()) return s;
      if (std::abs(tvs[i][j] - tvs[j][i]) > 1e-12) {
        return absl::InvalidArgumentError("tv matrix must be symmetric");
      }
    }
  }
  return absl::OkStatus();
}

double ClassicalFanoRaw(int num, const std::vector<double>& kls) {
  double mean = 0.0;
  for (double k : kls) mean += k;
  mean /= kls.size();
  return 1.0 - (1.0 + mean) / std::log(static_cast<double>(num));
}

absl::Status CheckKls(int num, const std::vector<double>& kls) {
  if (static_cast<int>(kls.size()) != num) {
    return MakeError(ErrorKind::kLengthMismatch,
                     absl::StrCat("expected ", num, " KL values, got ",
                                  kls.size()));
  }
  for (double k : kls) {
    if (!(k >= 0.0)) return absl::InvalidArgumentError("KL values must be >= 0");
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateConstraint(const PrivacyConstraint& c) {
  if (const auto* p = std::get_if<PureDp>(&c)) {
    if (!(p->epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be > 0");
  } else if (const auto* a = std::get_if<ApproxDp>(&c)) {
    if (!(a->epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be > 0");
    if (!(a->delta >= 0.0 && a->delta < 1.0)) {
      return absl::InvalidArgumentError("delta must be in [0,1)");
    }
  } else if (const auto* z = std::get_if<Zcdp>(&c)) {
    if (!(z->rho > 0.0)) return absl::InvalidArgumentError("rho must be > 0");
  }
  return absl::OkStatus();
}

std::string ConstraintKind(const PrivacyConstraint& c) {
  switch (c.index()) {
    case 1:
      return "pure_dp";
    case 2:
      return "approx_dp";
    case 3:
      return "zcdp";
    default:
      return "none";
  }
}

std::string DescribeConstraint(const PrivacyConstraint& c) {
  if (const auto* p = std::get_if<PureDp>(&c)) {
    return absl::StrFormat("pure_dp(eps=%g)", p->epsilon);
  }
  if (const auto* a = std::get_if<ApproxDp>(&c)) {
    return absl::StrFormat("approx_dp(eps=%g, delta=%g)", a->epsilon, a->delta);
  }
  if (const auto* z = std::get_if<Zcdp>(&c)) {
    return absl::StrFormat("zcdp(rho=%g)", z->rho);
  }
  return "none";
}

bool IsDpFamily(const PrivacyConstraint& c) {
  return std::holds_alternative<PureDp>(c) ||
         std::holds_alternative<ApproxDp>(c);
}

std::optional<DpParams> AsDp(const PrivacyConstraint& c) {
  if (const auto* p = std::get_if<PureDp>(&c)) return DpParams{p->epsilon, 0.0};
  if (const auto* a = std::get_if<ApproxDp>(&c)) {
    return DpParams{a->epsilon, a->delta};
  }
  return std::nullopt;
}

absl::StatusOr<BoundResult> LeCamClassical(double tv) {
  if (absl::Status s = CheckTv(tv); !s.ok()) return s;
  return Finish({{"classical_le_cam", 0.5 * (1.0 - tv)}}, 0, 2, NonPrivate{});
}

absl::StatusOr<BoundResult> FanoClassical(int num_hypotheses,
                                          const std::vector<double>& kls) {
  if (num_hypotheses < 2) return absl::InvalidArgumentError("N must be >= 2");
  if (absl::Status s = CheckKls(num_hypotheses, kls); !s.ok()) return s;
  return Finish({{"classical_fano", ClassicalFanoRaw(num_hypotheses, kls)}}, 0,
                num_hypotheses, NonPrivate{});
}

absl::StatusOr<BoundResult> LeCamPrivate(const PrivacyConstraint& c,
                                         int64_t n, double tv, TestForm form) {
  if (absl::Status s = ValidateConstraint(c); !s.ok()) return s;
  if (absl::Status s = CheckTv(tv); !s.ok()) return s;
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  const double nd = static_cast<double>(n);
  const double classical = 0.5 * (1.0 - tv);

  if (std::holds_alternative<NonPrivate>(c)) {
    if (form == TestForm::kProduct) {
      return MakeError(ErrorKind::kFormMismatch,
                       "product form needs a privacy constraint; use the "
                       "joint classical bound");
    }
    return Finish({{"classical_le_cam", classical}}, n, 2, c);
  }
  if (std::optional<DpParams> dp = AsDp(c)) {
    const double e_eps = std::exp(-dp->epsilon);
    const double slack = 2.0 * nd * e_eps * dp->delta;
    if (form == TestForm::kJoint) {
      double factor = 1.0 - std::exp(-nd * dp->epsilon) + slack;
      return Finish({{"classical_le_cam", classical},
                     {"dp_le_cam_joint", 0.5 * (1.0 - factor * tv)}},
                    n, 2, c);
    }
    double base = std::pow(1.0 - (1.0 - e_eps) * tv, nd);
    return Finish({{"dp_le_cam_product", 0.5 * (base - slack * tv)}}, n, 2, c);
  }
  const double rho = std::get<Zcdp>(c).rho;
  const double scale = nd * std::sqrt(rho / 2.0);
  const double zcdp = 0.5 * (1.0 - SafeMul(scale, tv));
  if (form == TestForm::kJoint) {
    return Finish({{"classical_le_cam", classical}, {"zcdp_le_cam_joint", zcdp}},
                  n, 2, c);
  }
  return Finish({{"zcdp_le_cam_product", zcdp}}, n, 2, c);
}

absl::StatusOr<BoundResult> FanoPrivate(
    const PrivacyConstraint& c, int64_t n, int num_hypotheses,
    const Matrix& tvs, const std::optional<std::vector<double>>& kls,
    TestForm form) {
  if (absl::Status s = ValidateConstraint(c); !s.ok()) return s;
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (num_hypotheses < 2) return absl::InvalidArgumentError("N must be >= 2");
  if (absl::Status s = CheckTvMatrix(tvs, num_hypotheses); !s.ok()) return s;
  if (kls.has_value()) {
    if (absl::Status s = CheckKls(num_hypotheses, *kls); !s.ok()) return s;
  }

  const double nd = static_cast<double>(n);
  const double big_n = static_cast<double>(num_hypotheses);
  const double n2 = big_n * big_n;
  const double log_n = std::log(big_n);
  const std::vector<double> ts = DisagreementTerms(tvs);
  double sum_t = 0.0;
  for (double t : ts) sum_t += t;

  std::vector<BranchValue> branches;
  if (kls.has_value()) {
    branches.push_back({"classical_fano", ClassicalFanoRaw(num_hypotheses, *kls)});
  }

  if (std::holds_alternative<NonPrivate>(c)) {
    if (!kls.has_value()) {
      return absl::InvalidArgumentError(
          "non-private Fano needs KL values to a reference law");
    }
    return Finish(std::move(branches), n, num_hypotheses, c);
  }

  if (std::optional<DpParams> dp = AsDp(c)) {
    const double e_eps = std::exp(-dp->epsilon);
    const double matching =
        1.0 - (1.0 + SafeMul(nd * dp->epsilon, sum_t) / n2) / log_n;
    if (form == TestForm::kJoint) {
      double factor = 1.0 - std::exp(-nd * dp->epsilon) +
                      2.0 * nd * e_eps * dp->delta;
      // Only ordered pairs i != j carry a two-point bound; see the
      // product branch.
      branches.push_back({"dp_fano_pairwise",
                          (n2 - big_n) / (2.0 * n2) -
                              factor / (2.0 * n2) * sum_t});
      if (dp->delta == 0.0) branches.push_back({"dp_fano_matching", matching});
    } else {
      // Diagonal pairs are left out: the two-point inequality behind each
      // term needs i != j, and a diagonal term of 1 would exceed the error
      // of an accurate test once eps is large.
      double acc = 0.0;
      for (double t : ts) {
        acc += std::pow(1.0 - (1.0 - e_eps) * t, nd) -
               2.0 * nd * e_eps * dp->delta * t;
      }
      branches.push_back({"dp_fano_pairwise_product", acc / (2.0 * n2)});
      if (dp->delta == 0.0) {
        branches.push_back({"dp_fano_matching_product", matching});
      }
    }
    return Finish(std::move(branches), n, num_hypotheses, c);
  }

  const double rho = std::get<Zcdp>(c).rho;
  if (form == TestForm::kJoint) {
    double raw = 1.0 - (1.0 + SafeMul(nd * nd * rho, sum_t) / n2) / log_n;
    branches.push_back({"zcdp_fano", raw});
  } else {
    double inner = 0.0;
    for (double t : ts) inner += t / nd + t * t;
    double raw = 1.0 - (1.0 + SafeMul(nd * nd * rho, inner) / n2) / log_n;
    branches.push_back({"zcdp_fano_product", raw});
  }
  return Finish(std::move(branches), n, num_hypotheses, c);
}

absl::StatusOr<double> MinimaxFromPacking(double phi_of_omega,
                                          const BoundResult& test_bound) {
  if (!(phi_of_omega >= 0.0)) {
    return absl::InvalidArgumentError("phi(omega) must be >= 0");
  }
  return phi_of_omega * test_bound.value;
}

absl::StatusOr<MinimaxBound> KlQuadraticBounds(int64_t d, int64_t n,
                                               double gamma, double r0,
                                               const PrivacyConstraint& c) {
  if (absl::Status s = ValidateConstraint(c); !s.ok()) return s;
  if (d < 66) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("d must be >= 66, got ", d));
  }
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (!(gamma > 0.0)) return absl::InvalidArgumentError("gamma must be > 0");
  if (!(r0 > 0.0)) return absl::InvalidArgumentError("r0 must be > 0");

  const double dd = static_cast<double>(d);
  const double nd = static_cast<double>(n);
  const double radius = r0 / std::sqrt(dd);
  const double stat = std::min(radius, 1.0 / (64.0 * std::sqrt(nd * gamma)));

  double priv = 0.0;
  bool has_priv = false;
  if (std::optional<DpParams> dp = AsDp(c)) {
    if (dp->delta != 0.0) {
      return MakeError(ErrorKind::kDomainError,
                       "only pure epsilon-DP is covered (delta must be 0)");
    }
    priv = std::min(radius, std::sqrt(dd) / (64.0 * 64.0 * std::sqrt(2.0) * nd *
                                             dp->epsilon * std::sqrt(gamma)));
    has_priv = true;
  } else if (const auto* z = std::get_if<Zcdp>(&c)) {
    if (!(z->rho < 1.0)) {
      return MakeError(ErrorKind::kDomainError, "rho must be < 1");
    }
    priv = std::min(radius, 1.0 / (64.0 * 64.0 * 2.0 * std::sqrt(2.0) * nd *
                                   std::sqrt(z->rho * gamma)));
    has_priv = true;
  }

  const double best = has_priv ? std::max(stat, priv) : stat;
  MinimaxBound out;
  out.value = best * best * dd / 32.0;
  if (best == radius) {
    out.branch = "radius";
  } else if (!has_priv || stat >= priv) {
    out.branch = "statistical";
  } else {
    out.branch = "privacy";
  }
  return out;
}

}  // namespace dpminimax

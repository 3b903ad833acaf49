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

#include "dpminimax/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "dpminimax/couplings.h"
#include "dpminimax/errors.h"
#include "dpminimax/rng.h"

namespace dpminimax {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e^{-eps * k} with k = 0 giving 1 even for eps = inf.
double ExpNeg(double eps, double k) {
  if (k == 0.0) return 1.0;
  return std::exp(-eps * k);
}

double SafeMul(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  return x * y;
}

int64_t IntPow(int64_t base, int64_t exp) {
  int64_t r = 1;
  for (int64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<int64_t>::max() / std::max<int64_t>(base, 1)) {
      return std::numeric_limits<int64_t>::max();
    }
    r *= base;
  }
  return r;
}

absl::Status CheckCaps(const FiniteMechanism& m) {
  if (m.num_datasets() > kMaxVerifyDatasets) {
    return MakeError(ErrorKind::kTooLarge,
                     absl::StrCat(m.num_datasets(), " datasets exceed the cap of ",
                                  kMaxVerifyDatasets));
  }
  if (m.num_outputs() > kMaxVerifyOutputs) {
    return MakeError(ErrorKind::kTooLarge,
                     absl::StrCat(m.num_outputs(), " outputs exceed the cap of ",
                                  kMaxVerifyOutputs));
  }
  return absl::OkStatus();
}

DiscreteDistribution RowDistribution(const FiniteMechanism& m, int x) {
  std::vector<int64_t> atoms(m.num_outputs());
  std::iota(atoms.begin(), atoms.end(), 0);
  return *DiscreteDistribution::Create(std::move(atoms), m.Row(x));
}

// Largest violation of P_x(S) <= mult P_y(S) + add over all events S.
std::optional<PrivacyWitness> DpPairViolation(const FiniteMechanism& m, int x,
                                              int y, double mult, double add) {
  if (std::isinf(mult)) return std::nullopt;
  const int outputs = m.num_outputs();
  std::optional<PrivacyWitness> worst;
  double worst_excess = kDpTolerance;
  for (uint32_t mask = 1; mask < (1u << outputs); ++mask) {
    double px = 0.0, py = 0.0;
    for (int o = 0; o < outputs; ++o) {
      if (mask & (1u << o)) {
        px += m.Row(x)[o];
        py += m.Row(y)[o];
      }
    }
    double rhs = mult * py + add;
    if (px - rhs > worst_excess) {
      worst_excess = px - rhs;
      PrivacyWitness w;
      w.x = x;
      w.y = y;
      w.distance = m.Distance(x, y);
      for (int o = 0; o < outputs; ++o) {
        if (mask & (1u << o)) w.event.push_back(o);
      }
      w.lhs = px;
      w.rhs = rhs;
      worst = w;
    }
  }
  return worst;
}

// First alpha at which D_alpha(P_x || P_y) > coeff * alpha.
std::optional<PrivacyWitness> ZcdpPairViolation(const FiniteMechanism& m,
                                                int x, int y, double coeff) {
  DiscreteDistribution p = RowDistribution(m, x);
  DiscreteDistribution q = RowDistribution(m, y);
  std::vector<double> alphas = ZcdpAlphaGrid();
  double d_inf = 0.0;
  for (int o = 0; o < m.num_outputs(); ++o) {
    double a = m.Row(x)[o];
    double b = m.Row(y)[o];
    if (a == 0.0) continue;
    d_inf = b == 0.0 ? kInf : std::max(d_inf, std::log(a / b));
  }
  if (std::isfinite(d_inf) && coeff > 0.0 && d_inf / coeff > 16.0) {
    double limit = d_inf / coeff;
    for (double a = 32.0; a < limit; a *= 2.0) alphas.push_back(a);
    alphas.push_back(limit);
  }
  for (double alpha : alphas) {
    double lhs = *Renyi(alpha, p, q);
    double rhs = coeff * alpha;
    if (lhs > rhs + kDpTolerance * std::max(1.0, rhs)) {
      PrivacyWitness w;
      w.x = x;
      w.y = y;
      w.distance = m.Distance(x, y);
      w.alpha = alpha;
      w.lhs = lhs;
      w.rhs = rhs;
      return w;
    }
  }
  return std::nullopt;
}

// Runs `check` over ordered pairs (x, y), x != y, optionally restricted to
// neighbours; stops at the first violation.
template <typename Fn>
PrivacyCheck ScanPairs(const FiniteMechanism& m, bool neighbours_only,
                       Fn check) {
  PrivacyCheck out;
  for (int x = 0; x < m.num_datasets(); ++x) {
    for (int y = 0; y < m.num_datasets(); ++y) {
      if (x == y) continue;
      if (neighbours_only && m.Distance(x, y) != 1) continue;
      ++out.comparisons;
      std::optional<PrivacyWitness> w = check(x, y);
      if (w.has_value()) {
        out.holds = false;
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

absl::Status CheckSameLength(const std::vector<Dataset>& datasets) {
  for (const Dataset& d : datasets) {
    if (d.n() != datasets[0].n()) {
      return MakeError(ErrorKind::kLengthMismatch, "datasets differ in length");
    }
  }
  return absl::OkStatus();
}

int HammingUnchecked(const Dataset& a, const Dataset& b) {
  int h = 0;
  for (int i = 0; i < a.n(); ++i) h += a.entries[i] != b.entries[i];
  return h;
}

absl::Status Mismatch(const SimilarityKind& kind, const PrivacyConstraint& c) {
  return MakeError(ErrorKind::kKindConstraintMismatch,
                   absl::StrCat(SimilarityKindName(kind), " has no form for ",
                                ConstraintKind(c)));
}

}  // namespace

absl::StatusOr<int> Hamming(const Dataset& a, const Dataset& b) {
  if (a.n() != b.n()) {
    return MakeError(ErrorKind::kLengthMismatch,
                     absl::StrCat("lengths ", a.n(), " and ", b.n()));
  }
  return HammingUnchecked(a, b);
}

absl::StatusOr<FiniteMechanism> FiniteMechanism::Create(
    int alphabet, int n, std::vector<std::string> labels, Matrix kernel) {
  if (alphabet < 1 || n < 1) {
    return absl::InvalidArgumentError("alphabet and n must be >= 1");
  }
  const int64_t count = IntPow(alphabet, n);
  if (count > kMaxDatasets) {
    return MakeError(ErrorKind::kTooLarge,
                     absl::StrCat("|X|^n = ", count, " exceeds ", kMaxDatasets));
  }
  if (labels.empty()) return absl::InvalidArgumentError("no outputs");
  if (static_cast<int64_t>(kernel.size()) != count) {
    return MakeError(ErrorKind::kShapeMismatch,
                     absl::StrCat("kernel needs ", count, " rows"));
  }
  for (auto& row : kernel) {
    if (row.size() != labels.size()) {
      return MakeError(ErrorKind::kShapeMismatch,
                       "kernel row length differs from output count");
    }
    double total = 0.0;
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        return absl::InvalidArgumentError("kernel entries must be >= 0");
      }
      total += v;
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
      return absl::InvalidArgumentError(
          absl::StrCat("kernel row sums to ", total));
    }
    for (double& v : row) v /= total;
  }
  FiniteMechanism m;
  m.alphabet_ = alphabet;
  m.n_ = n;
  m.labels_ = std::move(labels);
  m.kernel_ = std::move(kernel);
  m.distance_.assign(count, std::vector<int>(count, 0));
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      m.distance_[a][b] = HammingUnchecked(m.DatasetAt(a), m.DatasetAt(b));
    }
  }
  return m;
}

Dataset FiniteMechanism::DatasetAt(int index) const {
  Dataset d;
  d.entries.assign(n_, 0);
  for (int i = n_ - 1; i >= 0; --i) {
    d.entries[i] = index % alphabet_;
    index /= alphabet_;
  }
  return d;
}

int FiniteMechanism::IndexOf(const Dataset& dataset) const {
  if (dataset.n() != n_) return -1;
  int index = 0;
  for (int64_t e : dataset.entries) {
    if (e < 0 || e >= alphabet_) return -1;
    index = index * alphabet_ + static_cast<int>(e);
  }
  return index;
}

std::string SimilarityKindName(const SimilarityKind& kind) {
  switch (kind.index()) {
    case 0:
      return "global_anchor";
    case 1:
      return "projection_anchor";
    case 2:
      return "le_cam_match";
    case 3:
      return "pairwise_anchor";
    default:
      return "fano_match";
  }
}

absl::StatusOr<Dataset> DefaultAnchor(const std::vector<Dataset>& datasets) {
  if (datasets.size() < 2) {
    return MakeError(ErrorKind::kArityMismatch, "need at least two datasets");
  }
  if (absl::Status s = CheckSameLength(datasets); !s.ok()) return s;
  const int n = datasets[0].n();
  Dataset anchor = datasets[0];
  if (datasets.size() == 2) {
    const Dataset& b = datasets[1];
    const int h = HammingUnchecked(anchor, b);
    int taken = 0;
    const int from_first = (h + 1) / 2;
    for (int i = 0; i < n; ++i) {
      if (anchor.entries[i] == b.entries[i]) continue;
      if (taken++ >= from_first) anchor.entries[i] = b.entries[i];
    }
    return anchor;
  }
  for (int i = 0; i < n; ++i) {
    std::map<int64_t, int> votes;
    for (const Dataset& d : datasets) ++votes[d.entries[i]];
    int best = -1;
    for (const auto& [symbol, count] : votes) {
      if (count > best) {
        best = count;
        anchor.entries[i] = symbol;
      }
    }
  }
  return anchor;
}

absl::StatusOr<double> Similarity(const PrivacyConstraint& c,
                                  const SimilarityKind& kind,
                                  const std::vector<Dataset>& datasets) {
  if (absl::Status s = ValidateConstraint(c); !s.ok()) return s;
  const int num = static_cast<int>(datasets.size());
  if (num < 2) {
    return MakeError(ErrorKind::kArityMismatch, "need at least two datasets");
  }
  if (absl::Status s = CheckSameLength(datasets); !s.ok()) return s;
  const double big_n = num;
  const std::optional<DpParams> dp = AsDp(c);
  const auto* zcdp = std::get_if<Zcdp>(&c);

  if (std::holds_alternative<LeCamMatch>(kind)) {
    if (num != 2) {
      return MakeError(ErrorKind::kArityMismatch, "Le Cam matching needs N = 2");
    }
    const double h = HammingUnchecked(datasets[0], datasets[1]);
    if (dp.has_value()) {
      const double half = std::ceil(h / 2.0);
      return 0.5 * ExpNeg(dp->epsilon, half) -
             std::exp(-dp->epsilon) * dp->delta * half;
    }
    if (zcdp != nullptr) return 0.5 * (1.0 - std::sqrt(zcdp->rho / 2.0) * h);
    return Mismatch(kind, c);
  }

  if (std::holds_alternative<FanoMatch>(kind)) {
    double sum = 0.0;
    for (const Dataset& a : datasets) {
      for (const Dataset& b : datasets) {
        double h = HammingUnchecked(a, b);
        sum += zcdp != nullptr ? h * h : h;
      }
    }
    if (dp.has_value()) {
      if (dp->delta != 0.0) return Mismatch(kind, c);
      return 1.0 - (1.0 + SafeMul(dp->epsilon, sum) / (big_n * big_n)) /
                       std::log(big_n);
    }
    if (zcdp != nullptr) {
      return 1.0 - (1.0 + zcdp->rho * sum / (big_n * big_n)) / std::log(big_n);
    }
    return Mismatch(kind, c);
  }

  // The remaining kinds are anchoring constructions for (eps, delta)-DP.
  if (!dp.has_value()) return Mismatch(kind, c);
  const double eps = dp->epsilon;
  const double slack = std::exp(-eps) * dp->delta;

  if (std::holds_alternative<PairwiseAnchor>(kind)) {
    double sum = 0.0;
    // Ordered pairs i != j only; an i = j term would claim
    // 2 P(error_i) >= 1, which accurate private tests violate.
    for (size_t i = 0; i < datasets.size(); ++i) {
      for (size_t j = 0; j < datasets.size(); ++j) {
        if (i == j) continue;
        const Dataset& a = datasets[i];
        const Dataset& b = datasets[j];
        const double half = std::ceil(HammingUnchecked(a, b) / 2.0);
        sum += ExpNeg(eps, half) - 2.0 * slack * half;
      }
    }
    return sum / (2.0 * big_n * big_n);
  }

  Dataset anchor;
  if (const auto* g = std::get_if<GlobalAnchor>(&kind)) {
    if (g->anchor.has_value()) {
      anchor = *g->anchor;
      if (anchor.n() != datasets[0].n()) {
        return MakeError(ErrorKind::kLengthMismatch,
                         "anchor length differs from the datasets");
      }
    } else {
      absl::StatusOr<Dataset> a = DefaultAnchor(datasets);
      if (!a.ok()) return a.status();
      anchor = *std::move(a);
    }
  } else {
    const int j = std::get<ProjectionAnchor>(kind).j;
    if (j < 0 || j >= num) {
      return MakeError(ErrorKind::kArityMismatch,
                       absl::StrCat("projection index ", j, " out of range"));
    }
    anchor = datasets[j];
  }
  double h = 0.0;
  for (const Dataset& d : datasets) {
    h = std::max<double>(h, HammingUnchecked(d, anchor));
  }
  return (big_n - 1.0) / big_n * ExpNeg(eps, h) - slack * h;
}

std::vector<double> ZcdpAlphaGrid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(1.0 + std::ldexp(1.0, -k));
  for (double a : {2.0, 4.0, 8.0, 16.0}) grid.push_back(a);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

GroupTerms DpGroupTerms(double epsilon, double delta, int k) {
  if (k == 0) return {1.0, 0.0};
  return {std::exp(k * epsilon), k * delta * std::exp((k - 1) * epsilon)};
}

absl::StatusOr<PrivacyCheck> VerifyPrivacy(const FiniteMechanism& m,
                                           const PrivacyConstraint& c) {
  if (absl::Status s = ValidateConstraint(c); !s.ok()) return s;
  if (absl::Status s = CheckCaps(m); !s.ok()) return s;
  if (std::optional<DpParams> dp = AsDp(c)) {
    const GroupTerms t = DpGroupTerms(dp->epsilon, dp->delta, 1);
    return ScanPairs(m, true, [&](int x, int y) {
      return DpPairViolation(m, x, y, t.multiplicative, t.additive);
    });
  }
  if (const auto* z = std::get_if<Zcdp>(&c)) {
    return ScanPairs(m, true, [&](int x, int y) {
      return ZcdpPairViolation(m, x, y, z->rho);
    });
  }
  return PrivacyCheck{};
}

absl::StatusOr<PrivacyCheck> VerifyGroupPrivacy(const FiniteMechanism& m,
                                                const PrivacyConstraint& c) {
  absl::StatusOr<PrivacyCheck> base = VerifyPrivacy(m, c);
  if (!base.ok()) return base.status();
  if (!base->holds) {
    return absl::FailedPreconditionError(
        "mechanism does not satisfy the base constraint");
  }
  if (std::optional<DpParams> dp = AsDp(c)) {
    return ScanPairs(m, false, [&](int x, int y) {
      const GroupTerms t = DpGroupTerms(dp->epsilon, dp->delta, m.Distance(x, y));
      return DpPairViolation(m, x, y, t.multiplicative, t.additive);
    });
  }
  if (const auto* z = std::get_if<Zcdp>(&c)) {
    return ScanPairs(m, false, [&](int x, int y) {
      const double k = m.Distance(x, y);
      return ZcdpPairViolation(m, x, y, z->rho * k * k);
    });
  }
  return PrivacyCheck{};
}

absl::StatusOr<PrivacyCheck> VerifyKlDp(const FiniteMechanism& m,
                                        double epsilon) {
  absl::StatusOr<PrivacyCheck> base = VerifyPrivacy(m, PureDp{epsilon});
  if (!base.ok()) return base.status();
  if (!base->holds) {
    return absl::FailedPreconditionError("mechanism is not epsilon-DP");
  }
  return ScanPairs(m, false, [&](int x, int y) -> std::optional<PrivacyWitness> {
    const double lhs = Kl(RowDistribution(m, x), RowDistribution(m, y));
    const double rhs = SafeMul(epsilon, m.Distance(x, y));
    if (lhs <= rhs + kKlDpTolerance) return std::nullopt;
    PrivacyWitness w;
    w.x = x;
    w.y = y;
    w.distance = m.Distance(x, y);
    w.lhs = lhs;
    w.rhs = rhs;
    return w;
  });
}

absl::StatusOr<AdmissibilityCheck> VerifyAdmissibility(
    const FiniteMechanism& m, const PrivacyConstraint& c,
    const SimilarityKind& kind, int num_hypotheses) {
  if (absl::Status s = CheckCaps(m); !s.ok()) return s;
  if (num_hypotheses < 2) {
    return MakeError(ErrorKind::kArityMismatch, "N must be >= 2");
  }
  const int num = num_hypotheses;
  const int outputs = m.num_outputs();
  const int64_t tuples = IntPow(m.num_datasets(), num);
  const int64_t tests = IntPow(num, outputs);
  if (tuples > kMaxAdmissibilityWork / std::max<int64_t>(tests, 1)) {
    return MakeError(ErrorKind::kTooLarge,
                     absl::StrCat(tuples, " tuples x ", tests,
                                  " tests exceed the enumeration cap"));
  }
  absl::StatusOr<PrivacyCheck> privacy = VerifyPrivacy(m, c);
  if (!privacy.ok()) return privacy.status();

  AdmissibilityCheck out;
  out.mechanism_satisfies_constraint = privacy->holds;
  out.tuples = tuples;
  out.tests = tests;
  out.worst_gap = kInf;

  std::vector<int> tuple(num, 0);
  std::vector<int> test(outputs, 0);
  std::vector<Dataset> datasets(num);
  for (int64_t t = 0; t < tuples; ++t) {
    int64_t rem = t;
    for (int i = num - 1; i >= 0; --i) {
      tuple[i] = static_cast<int>(rem % m.num_datasets());
      rem /= m.num_datasets();
      datasets[i] = m.DatasetAt(tuple[i]);
    }
    absl::StatusOr<double> s = Similarity(c, kind, datasets);
    if (!s.ok()) return s.status();
    for (int64_t psi = 0; psi < tests; ++psi) {
      int64_t r = psi;
      double correct = 0.0;
      for (int o = 0; o < outputs; ++o) {
        test[o] = static_cast<int>(r % num);
        r /= num;
        correct += m.Row(tuple[test[o]])[o];
      }
      const double avg_error = 1.0 - correct / num;
      const double gap = avg_error - *s;
      if (gap < out.worst_gap) {
        out.worst_gap = gap;
        if (gap < -kDpTolerance) {
          out.holds = false;
          out.witness = AdmissibilityWitness{tuple, test, avg_error, *s};
        }
      }
    }
  }
  return out;
}

absl::StatusOr<TransportCheck> VerifyTransportBound(
    const FiniteMechanism& m, const PrivacyConstraint& c,
    const SimilarityKind& kind,
    const std::vector<DiscreteDistribution>& marginals, int64_t trials,
    uint64_t seed) {
  if (absl::Status s = CheckCaps(m); !s.ok()) return s;
  const int num = static_cast<int>(marginals.size());
  if (num < 2) return MakeError(ErrorKind::kArityMismatch, "need N >= 2");
  const int outputs = m.num_outputs();
  const int num_data = m.num_datasets();
  const int64_t tests = IntPow(num, outputs);
  const int64_t tuples = IntPow(num_data, num);
  if (tuples > kMaxAdmissibilityWork / std::max<int64_t>(tests, 1)) {
    return MakeError(ErrorKind::kTooLarge, "transport enumeration too large");
  }
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");

  Matrix weights(num, std::vector<double>(num_data, 0.0));
  for (int i = 0; i < num; ++i) {
    for (int k = 0; k < marginals[i].size(); ++k) {
      int64_t atom = marginals[i].atoms()[k];
      if (atom < 0 || atom >= num_data) {
        return absl::InvalidArgumentError(
            absl::StrCat("marginal atom ", atom, " is not a dataset index"));
      }
      weights[i][atom] = marginals[i].weights()[k];
    }
  }

  absl::StatusOr<PrivacyCheck> privacy = VerifyPrivacy(m, c);
  if (!privacy.ok()) return privacy.status();
  TransportCheck out;
  out.mechanism_satisfies_constraint = privacy->holds;

  // Output law under each marginal, then min over tests of max error.
  Matrix out_law(num, std::vector<double>(outputs, 0.0));
  for (int i = 0; i < num; ++i) {
    for (int x = 0; x < num_data; ++x) {
      for (int o = 0; o < outputs; ++o) out_law[i][o] += weights[i][x] * m.Row(x)[o];
    }
  }
  double lhs = kInf;
  for (int64_t psi = 0; psi < tests; ++psi) {
    std::vector<double> correct(num, 0.0);
    int64_t r = psi;
    for (int o = 0; o < outputs; ++o) {
      int label = static_cast<int>(r % num);
      r /= num;
      correct[label] += out_law[label][o];
    }
    double worst = 0.0;
    for (int i = 0; i < num; ++i) worst = std::max(worst, 1.0 - correct[i]);
    lhs = std::min(lhs, worst);
  }
  out.lhs = lhs;

  auto add_entry = [&](std::string name, double rhs, double se) {
    TransportEntry e{std::move(name), rhs, se,
                     lhs >= rhs - 3.0 * se - kDpTolerance};
    out.holds = out.holds && e.holds;
    out.entries.push_back(std::move(e));
  };

  if (std::holds_alternative<NonPrivate>(c)) {
    if (num == 2) {
      absl::StatusOr<BoundResult> b =
          LeCamClassical(Tv(marginals[0], marginals[1]));
      if (!b.ok()) return b.status();
      add_entry("classical_le_cam", b->value, 0.0);
    } else {
      std::vector<double> mix(num_data, 0.0);
      for (int i = 0; i < num; ++i) {
        for (int x = 0; x < num_data; ++x) mix[x] += weights[i][x] / num;
      }
      std::vector<int64_t> atoms(num_data);
      std::iota(atoms.begin(), atoms.end(), 0);
      absl::StatusOr<DiscreteDistribution> q =
          DiscreteDistribution::Create(atoms, mix);
      if (!q.ok()) return q.status();
      std::vector<double> kls;
      for (const DiscreteDistribution& p : marginals) kls.push_back(Kl(p, *q));
      absl::StatusOr<BoundResult> b = FanoClassical(num, kls);
      if (!b.ok()) return b.status();
      add_entry("classical_fano", b->value, 0.0);
    }
    return out;
  }

  // Similarity of every tuple in the product of supports, keyed base |D|.
  std::map<int64_t, double> sim;
  auto similarity_of = [&](const std::vector<int>& tuple) -> absl::StatusOr<double> {
    int64_t key = 0;
    for (int x : tuple) key = key * num_data + x;
    auto it = sim.find(key);
    if (it != sim.end()) return it->second;
    std::vector<Dataset> ds;
    for (int x : tuple) ds.push_back(m.DatasetAt(x));
    absl::StatusOr<double> s = Similarity(c, kind, ds);
    if (!s.ok()) return s.status();
    sim.emplace(key, *s);
    return *s;
  };

  // Independent coupling, exact.
  {
    double rhs = 0.0;
    std::vector<int> tuple(num, 0);
    for (int64_t t = 0; t < tuples; ++t) {
      int64_t rem = t;
      double prob = 1.0;
      for (int i = num - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(rem % num_data);
        rem /= num_data;
        prob *= weights[i][tuple[i]];
      }
      if (prob == 0.0) continue;
      absl::StatusOr<double> s = similarity_of(tuple);
      if (!s.ok()) return s.status();
      rhs += prob * *s;
    }
    add_entry("independent", rhs, 0.0);
  }

  // Maximal pair, exact.
  if (num == 2) {
    const double tv = Tv(marginals[0], marginals[1]);
    double rhs = 0.0;
    for (int x = 0; x < num_data; ++x) {
      for (int y = 0; y < num_data; ++y) {
        double prob = 0.0;
        if (x == y) {
          prob = std::min(weights[0][x], weights[1][x]);
        } else if (tv > 0.0) {
          prob = std::max(0.0, weights[0][x] - weights[1][x]) *
                 std::max(0.0, weights[1][y] - weights[0][y]) / tv;
        }
        if (prob == 0.0) continue;
        absl::StatusOr<double> s = similarity_of({x, y});
        if (!s.ok()) return s.status();
        rhs += prob * *s;
      }
    }
    add_entry("maximal_pair", rhs, 0.0);
  }

  // Exponential races, Monte Carlo.
  {
    absl::StatusOr<CouplingSampler> races = ExponentialRaces(marginals);
    if (!races.ok()) return races.status();
    double sum = 0.0, sum_sq = 0.0;
    std::vector<int64_t> draw;
    std::vector<int> tuple(num);
    for (int64_t t = 0; t < trials; ++t) {
      Rng rng = StreamRng(seed, static_cast<uint64_t>(t));
      races->DrawInto(rng, draw);
      for (int i = 0; i < num; ++i) tuple[i] = static_cast<int>(draw[i]);
      absl::StatusOr<double> s = similarity_of(tuple);
      if (!s.ok()) return s.status();
      sum += *s;
      sum_sq += *s * *s;
    }
    const double tr = static_cast<double>(trials);
    const double mean = sum / tr;
    const double var = std::max(0.0, sum_sq / tr - mean * mean);
    add_entry("exponential_races", mean,
              trials > 1 ? std::sqrt(var / (tr - 1.0)) : 0.0);
  }
  return out;
}

}  // namespace dpminimax

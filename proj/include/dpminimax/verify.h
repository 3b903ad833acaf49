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

// Exhaustive checks of privacy properties and admissible similarity
// functions on tiny finite mechanisms.

#ifndef DPMINIMAX_VERIFY_H_
#define DPMINIMAX_VERIFY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "dpminimax/bounds.h"
#include "dpminimax/divergences.h"

namespace dpminimax {

struct Dataset {
  std::vector<int64_t> entries;

  int n() const { return static_cast<int>(entries.size()); }
  bool operator==(const Dataset&) const = default;
};

// Number of differing coordinates. LengthMismatch when sizes differ.
absl::StatusOr<int> Hamming(const Dataset& a, const Dataset& b);

// Stochastic kernel from X^n (X = {0, ..., alphabet-1}) to a finite list of
// outputs. Datasets are indexed in base |X| with entry 0 most significant.
class FiniteMechanism {
 public:
  inline static constexpr int64_t kMaxDatasets = 4096;

  // kernel has |X|^n rows of probabilities over the outputs; each row must
  // be non-negative and sum to 1 within 1e-12.
  static absl::StatusOr<FiniteMechanism> Create(
      int alphabet, int n, std::vector<std::string> labels, Matrix kernel);

  int alphabet() const { return alphabet_; }
  int n() const { return n_; }
  int num_datasets() const { return static_cast<int>(kernel_.size()); }
  int num_outputs() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& kernel() const { return kernel_; }
  const std::vector<double>& Row(int dataset) const { return kernel_[dataset]; }

  Dataset DatasetAt(int index) const;
  // -1 when the dataset does not belong to X^n.
  int IndexOf(const Dataset& dataset) const;
  int Distance(int a, int b) const { return distance_[a][b]; }

 private:
  FiniteMechanism() = default;

  int alphabet_ = 0;
  int n_ = 0;
  std::vector<std::string> labels_;
  Matrix kernel_;
  std::vector<std::vector<int>> distance_;
};

// Exhaustive-verification caps.
inline constexpr int kMaxVerifyDatasets = 64;
inline constexpr int kMaxVerifyOutputs = 8;
inline constexpr double kDpTolerance = 1e-12;
inline constexpr double kKlDpTolerance = 1e-10;
inline constexpr int64_t kMaxAdmissibilityWork = 50000000;

// Anchor dataset shared by all tuples when set. When unset: the midpoint
// anchor for N = 2 (first ceil(d/2) disagreeing coordinates from X_1, the
// rest from X_2), and the coordinatewise plurality (ties to the smaller
// symbol) for N > 2.
struct GlobalAnchor {
  std::optional<Dataset> anchor;
};
// Anchor on X_j (0-based).
struct ProjectionAnchor {
  int j = 0;
};
struct LeCamMatch {};
struct PairwiseAnchor {};
struct FanoMatch {};

using SimilarityKind = std::variant<GlobalAnchor, ProjectionAnchor, LeCamMatch,
                                    PairwiseAnchor, FanoMatch>;

std::string SimilarityKindName(const SimilarityKind& kind);

// The anchor used by GlobalAnchor{nullopt} for the given tuple.
absl::StatusOr<Dataset> DefaultAnchor(const std::vector<Dataset>& datasets);

// Evaluates the admissible similarity function of `kind` under `c`.
// KindConstraintMismatch when the kind has no form for the constraint
// family (anchoring kinds and PairwiseAnchor are DP-only; FanoMatch under DP
// needs delta = 0; nothing applies to NonPrivate). ArityMismatch when N is
// unsuitable (LeCamMatch needs N = 2; all kinds need N >= 2).
absl::StatusOr<double> Similarity(const PrivacyConstraint& c,
                                  const SimilarityKind& kind,
                                  const std::vector<Dataset>& datasets);

struct PrivacyWitness {
  int x = 0;
  int y = 0;
  int distance = 0;
  // Violating event (output indices) for DP checks; empty for zCDP.
  std::vector<int> event;
  // Renyi order for zCDP checks; 0 for DP.
  double alpha = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PrivacyCheck {
  bool holds = true;
  std::optional<PrivacyWitness> witness;
  int64_t comparisons = 0;
};

// Renyi orders used for zCDP checks: 1 + 2^-k (k = 0..20) and 2, 4, 8, 16.
std::vector<double> ZcdpAlphaGrid();

// Multiplicative and additive terms of the DP group-privacy inequality at
// distance k: e^{k eps} and k delta e^{(k-1) eps}.
struct GroupTerms {
  double multiplicative;
  double additive;
};
GroupTerms DpGroupTerms(double epsilon, double delta, int k);

// Neighbouring pairs only. DP: every output event. zCDP: D_alpha <= rho alpha
// on ZcdpAlphaGrid, extended geometrically up to D_inf / rho when that is
// larger. NonPrivate always holds. TooLarge above the caps.
absl::StatusOr<PrivacyCheck> VerifyPrivacy(const FiniteMechanism& m,
                                           const PrivacyConstraint& c);

// All pairs at every distance k. FailedPrecondition unless VerifyPrivacy
// accepts the base constraint.
absl::StatusOr<PrivacyCheck> VerifyGroupPrivacy(const FiniteMechanism& m,
                                                const PrivacyConstraint& c);

// KL(M(X) || M(Y)) <= eps d(X, Y) for all pairs. FailedPrecondition unless
// the mechanism is eps-DP.
absl::StatusOr<PrivacyCheck> VerifyKlDp(const FiniteMechanism& m,
                                        double epsilon);

struct AdmissibilityWitness {
  std::vector<int> tuple;  // dataset indices
  std::vector<int> test;   // output index -> hypothesis (0-based)
  double average_error = 0.0;
  double similarity = 0.0;
};

struct AdmissibilityCheck {
  bool holds = true;
  // min over tuples and tests of average error minus similarity.
  double worst_gap = 0.0;
  std::optional<AdmissibilityWitness> witness;
  // Whether VerifyPrivacy accepted (m, c); admissibility is only claimed
  // for mechanisms that satisfy the constraint.
  bool mechanism_satisfies_constraint = false;
  int64_t tuples = 0;
  int64_t tests = 0;
};

// Enumerates every N-tuple of datasets and every test (map outputs ->
// hypotheses). The mechanism is not required to satisfy c, so violations can
// be exhibited.
absl::StatusOr<AdmissibilityCheck> VerifyAdmissibility(
    const FiniteMechanism& m, const PrivacyConstraint& c,
    const SimilarityKind& kind, int num_hypotheses);

struct TransportEntry {
  std::string coupling;  // "independent", "maximal_pair", "exponential_races"
  double rhs = 0.0;      // expected similarity under the coupling
  double standard_error = 0.0;  // 0 for exact evaluations
  bool holds = true;
};

struct TransportCheck {
  // min over tests of max_i error under marginal i, exact.
  double lhs = 0.0;
  std::vector<TransportEntry> entries;
  bool holds = true;
  bool mechanism_satisfies_constraint = false;
};

// Marginals are distributions over dataset indices. Checks the left side
// against the expected similarity under the independent coupling (exact),
// the maximal pair for N = 2 (exact), and exponential races (Monte Carlo,
// accepted within 3 standard errors). With NonPrivate the right side is the
// classical Le Cam (N = 2) or Fano (mixture reference) bound instead.
absl::StatusOr<TransportCheck> VerifyTransportBound(
    const FiniteMechanism& m, const PrivacyConstraint& c,
    const SimilarityKind& kind,
    const std::vector<DiscreteDistribution>& marginals, int64_t trials = 20000,
    uint64_t seed = 1);

}  // namespace dpminimax

#endif  // DPMINIMAX_VERIFY_H_

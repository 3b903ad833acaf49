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

#include "dpminimax/couplings.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpminimax/errors.h"
#include "dpminimax/parallel.h"
#include "simplex.h"

namespace dpminimax {
namespace {

// Accumulators for one chunk of draws.
struct Partial {
  std::vector<int64_t> mismatch;  // N*N
  std::vector<double> ham_sum;    // N*N
  std::vector<double> ham_sq;     // N*N
  std::vector<std::vector<int64_t>> counts;
  std::vector<int64_t> outside;
};

// Index of `atom` in the sorted (atom, position) table, or -1.
int Lookup(const std::vector<std::pair<int64_t, int>>& table, int64_t atom) {
  auto it = std::lower_bound(
      table.begin(), table.end(), std::make_pair(atom, -1));
  if (it == table.end() || it->first != atom) return -1;
  return it->second;
}

}  // namespace

int64_t CouplingSampler::Categorical::Draw(Rng& rng) const {
  double u = rng.Uniform() * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  size_t idx = std::min<size_t>(it - cdf.begin(), atoms.size() - 1);
  return atoms[idx];
}

std::string_view CouplingSampler::kind_name() const {
  switch (kind_) {
    case Kind::kMaximalPair:
      return "maximal_pair";
    case Kind::kSharedUniformBernoulli:
      return "shared_uniform_bernoulli";
    case Kind::kExponentialRaces:
      return "exponential_races";
    case Kind::kProductLift:
      return "product_lift";
  }
  return "unknown";
}

void CouplingSampler::DrawInto(Rng& rng, std::vector<int64_t>& out) const {
  const int n_marg = num_marginals();
  out.resize(static_cast<size_t>(n_marg) * coordinates_);
  switch (kind_) {
    case Kind::kMaximalPair: {
      if (rng.Uniform() >= tv_) {
        int64_t x = common_.Draw(rng);
        out[0] = x;
        out[1] = x;
      } else {
        out[0] = residual_p_.Draw(rng);
        out[1] = residual_q_.Draw(rng);
      }
      return;
    }
    case Kind::kSharedUniformBernoulli: {
      double u = rng.Uniform();
      for (int i = 0; i < n_marg; ++i) out[i] = u < ps_[i] ? 1 : 0;
      return;
    }
    case Kind::kExponentialRaces: {
      const size_t k = universe_.size();
      double clocks[64];
      std::vector<double> heap_clocks;
      double* t = clocks;
      if (k > 64) {
        heap_clocks.resize(k);
        t = heap_clocks.data();
      }
      for (size_t x = 0; x < k; ++x) t[x] = rng.Exponential();
      for (int i = 0; i < n_marg; ++i) {
        const std::vector<double>& w = race_weights_[i];
        double best = std::numeric_limits<double>::infinity();
        size_t arg = 0;
        for (size_t x = 0; x < k; ++x) {
          if (w[x] <= 0.0) continue;
          double s = t[x] / w[x];
          if (s < best) {
            best = s;
            arg = x;
          }
        }
        out[i] = universe_[arg];
      }
      return;
    }
    case Kind::kProductLift: {
      std::vector<int64_t> one;
      for (int c = 0; c < coordinates_; ++c) {
        base_->DrawInto(rng, one);
        for (int i = 0; i < n_marg; ++i) {
          out[static_cast<size_t>(i) * coordinates_ + c] = one[i];
        }
      }
      return;
    }
  }
}

std::optional<Matrix> CouplingSampler::ExactDisagreement() const {
  const int n_marg = num_marginals();
  Matrix m(n_marg, std::vector<double>(n_marg, 0.0));
  switch (kind_) {
    case Kind::kMaximalPair:
      m[0][1] = m[1][0] = tv_;
      return m;
    case Kind::kSharedUniformBernoulli:
      for (int i = 0; i < n_marg; ++i) {
        for (int j = 0; j < n_marg; ++j) m[i][j] = std::abs(ps_[i] - ps_[j]);
      }
      return m;
    case Kind::kExponentialRaces:
      return std::nullopt;
    case Kind::kProductLift: {
      std::optional<Matrix> base = base_->ExactDisagreement();
      if (!base.has_value()) return std::nullopt;
      for (int i = 0; i < n_marg; ++i) {
        for (int j = 0; j < n_marg; ++j) {
          m[i][j] = 1.0 - std::pow(1.0 - (*base)[i][j], coordinates_);
        }
      }
      return m;
    }
  }
  return std::nullopt;
}

absl::StatusOr<CouplingSampler> MaximalPair(const DiscreteDistribution& p,
                                            const DiscreteDistribution& q) {
  std::vector<int64_t> universe = AtomUniverse({&p, &q});
  std::vector<double> a = AlignWeights(p, universe);
  std::vector<double> b = AlignWeights(q, universe);
  CouplingSampler s;
  s.kind_ = CouplingSampler::Kind::kMaximalPair;
  s.marginals_ = {p, q};
  double common_mass = 0.0;
  double acc_c = 0.0, acc_p = 0.0, acc_q = 0.0;
  for (size_t x = 0; x < universe.size(); ++x) {
    double mn = std::min(a[x], b[x]);
    common_mass += mn;
    if (mn > 0.0) {
      acc_c += mn;
      s.common_.atoms.push_back(universe[x]);
      s.common_.cdf.push_back(acc_c);
    }
    if (a[x] > b[x]) {
      acc_p += a[x] - b[x];
      s.residual_p_.atoms.push_back(universe[x]);
      s.residual_p_.cdf.push_back(acc_p);
    } else if (b[x] > a[x]) {
      acc_q += b[x] - a[x];
      s.residual_q_.atoms.push_back(universe[x]);
      s.residual_q_.cdf.push_back(acc_q);
    }
  }
  s.tv_ = Tv(p, q);
  // Guard against rounding: a branch with no atoms is never taken.
  if (s.common_.atoms.empty()) s.tv_ = 1.0;
  if (s.residual_p_.atoms.empty() || s.residual_q_.atoms.empty()) {
    s.tv_ = 0.0;
  }
  (void)common_mass;
  return s;
}

absl::StatusOr<CouplingSampler> SharedUniformBernoulli(
    const std::vector<double>& ps) {
  if (ps.empty()) return absl::InvalidArgumentError("no marginals");
  CouplingSampler s;
  s.kind_ = CouplingSampler::Kind::kSharedUniformBernoulli;
  for (double p : ps) {
    if (!(p > 0.0 && p < 1.0)) {
      return absl::InvalidArgumentError("each p_i must be in (0,1)");
    }
    absl::StatusOr<DiscreteDistribution> d = DiscreteDistribution::Bernoulli(p);
    if (!d.ok()) return d.status();
    s.marginals_.push_back(*std::move(d));
  }
  s.ps_ = ps;
  return s;
}

absl::StatusOr<CouplingSampler> ExponentialRaces(
    const std::vector<DiscreteDistribution>& marginals) {
  if (marginals.size() < 2) {
    return absl::InvalidArgumentError("need at least two marginals");
  }
  std::vector<const DiscreteDistribution*> ptrs;
  for (const DiscreteDistribution& d : marginals) {
    double total = 0.0;
    for (double w : d.weights()) total += w;
    if (!(total > 0.0) || !std::isfinite(total)) {
      return MakeError(ErrorKind::kDegenerateMarginal,
                       "marginal has no positive mass");
    }
    ptrs.push_back(&d);
  }
  CouplingSampler s;
  s.kind_ = CouplingSampler::Kind::kExponentialRaces;
  s.marginals_ = marginals;
  s.universe_ = AtomUniverse(ptrs);
  for (const DiscreteDistribution& d : marginals) {
    s.race_weights_.push_back(AlignWeights(d, s.universe_));
  }
  return s;
}

absl::StatusOr<CouplingSampler> ProductLift(const CouplingSampler& base,
                                            int n) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (base.coordinates() != 1) {
    return absl::InvalidArgumentError("base must be a single-coordinate coupling");
  }
  CouplingSampler s;
  s.kind_ = CouplingSampler::Kind::kProductLift;
  s.marginals_ = base.marginals();
  s.coordinates_ = n;
  s.base_ = std::make_shared<const CouplingSampler>(base);
  return s;
}

absl::StatusOr<CouplingStats> SimulateCoupling(const CouplingSampler& sampler,
                                               int64_t trials, uint64_t seed,
                                               int workers) {
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  const int n_marg = sampler.num_marginals();
  const int coords = sampler.coordinates();
  const size_t nn = static_cast<size_t>(n_marg) * n_marg;

  std::vector<std::vector<std::pair<int64_t, int>>> tables(n_marg);
  for (int i = 0; i < n_marg; ++i) {
    const auto& atoms = sampler.marginals()[i].atoms();
    for (int k = 0; k < static_cast<int>(atoms.size()); ++k) {
      tables[i].emplace_back(atoms[k], k);
    }
    std::sort(tables[i].begin(), tables[i].end());
  }

  const int64_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
  std::vector<Partial> partials(chunks);
  ParallelFor(chunks, workers, [&](int64_t chunk) {
    Partial& part = partials[chunk];
    part.mismatch.assign(nn, 0);
    part.ham_sum.assign(nn, 0.0);
    part.ham_sq.assign(nn, 0.0);
    part.outside.assign(n_marg, 0);
    for (int i = 0; i < n_marg; ++i) {
      part.counts.emplace_back(sampler.marginals()[i].size(), 0);
    }
    std::vector<int64_t> draw;
    const int64_t begin = chunk * kTrialChunk;
    const int64_t end = std::min(trials, begin + kTrialChunk);
    for (int64_t t = begin; t < end; ++t) {
      Rng rng = StreamRng(seed, static_cast<uint64_t>(t));
      sampler.DrawInto(rng, draw);
      for (int i = 0; i < n_marg; ++i) {
        for (int c = 0; c < coords; ++c) {
          int idx = Lookup(tables[i], draw[static_cast<size_t>(i) * coords + c]);
          if (idx < 0) {
            ++part.outside[i];
          } else {
            ++part.counts[i][idx];
          }
        }
        for (int j = i + 1; j < n_marg; ++j) {
          int ham = 0;
          for (int c = 0; c < coords; ++c) {
            ham += draw[static_cast<size_t>(i) * coords + c] !=
                   draw[static_cast<size_t>(j) * coords + c];
          }
          size_t ij = static_cast<size_t>(i) * n_marg + j;
          part.mismatch[ij] += ham > 0;
          part.ham_sum[ij] += ham;
          part.ham_sq[ij] += static_cast<double>(ham) * ham;
        }
      }
    }
  });

  std::vector<int64_t> mismatch(nn, 0);
  std::vector<double> ham_sum(nn, 0.0), ham_sq(nn, 0.0);
  std::vector<std::vector<int64_t>> counts(n_marg);
  std::vector<int64_t> outside(n_marg, 0);
  for (int i = 0; i < n_marg; ++i) counts[i].assign(sampler.marginals()[i].size(), 0);
  for (const Partial& part : partials) {
    for (size_t k = 0; k < nn; ++k) {
      mismatch[k] += part.mismatch[k];
      ham_sum[k] += part.ham_sum[k];
      ham_sq[k] += part.ham_sq[k];
    }
    for (int i = 0; i < n_marg; ++i) {
      outside[i] += part.outside[i];
      for (size_t a = 0; a < counts[i].size(); ++a) counts[i][a] += part.counts[i][a];
    }
  }

  CouplingStats stats;
  const double tr = static_cast<double>(trials);
  Matrix zero(n_marg, std::vector<double>(n_marg, 0.0));
  stats.disagreement.estimates = zero;
  stats.disagreement.standard_errors = zero;
  stats.disagreement.trials = trials;
  stats.hamming_mean = zero;
  stats.hamming_stderr = zero;
  for (int i = 0; i < n_marg; ++i) {
    for (int j = i + 1; j < n_marg; ++j) {
      size_t ij = static_cast<size_t>(i) * n_marg + j;
      double p = mismatch[ij] / tr;
      double se = std::sqrt(p * (1.0 - p) / tr);
      double mean = ham_sum[ij] / tr;
      double var = std::max(0.0, ham_sq[ij] / tr - mean * mean);
      double hse = trials > 1 ? std::sqrt(var / (tr - 1.0)) : 0.0;
      stats.disagreement.estimates[i][j] = stats.disagreement.estimates[j][i] = p;
      stats.disagreement.standard_errors[i][j] =
          stats.disagreement.standard_errors[j][i] = se;
      stats.hamming_mean[i][j] = stats.hamming_mean[j][i] = mean;
      stats.hamming_stderr[i][j] = stats.hamming_stderr[j][i] = hse;
    }
  }
  const double draws = tr * coords;
  for (int i = 0; i < n_marg; ++i) {
    const std::vector<double>& w = sampler.marginals()[i].weights();
    std::vector<double> freq(w.size());
    double l1 = outside[i] / draws;
    for (size_t a = 0; a < w.size(); ++a) {
      freq[a] = counts[i][a] / draws;
      l1 += std::abs(freq[a] - w[a]);
    }
    stats.marginal_frequency.push_back(std::move(freq));
    stats.marginal_l1_error.push_back(l1);
  }
  return stats;
}

absl::StatusOr<DisagreementMatrix> EstimateDisagreement(
    const CouplingSampler& sampler, int64_t trials, uint64_t seed,
    int workers) {
  absl::StatusOr<CouplingStats> stats =
      SimulateCoupling(sampler, trials, seed, workers);
  if (!stats.ok()) return stats.status();
  return std::move(stats->disagreement);
}

double RaceDisagreementBound(double tv) { return 2.0 * tv / (1.0 + tv); }

absl::StatusOr<double> MinDisagreementLp(
    const std::vector<DiscreteDistribution>& marginals) {
  const int n_marg = static_cast<int>(marginals.size());
  if (n_marg < 1) return absl::InvalidArgumentError("no marginals");

  // Supports (positive-weight atoms) of each marginal.
  std::vector<std::vector<int64_t>> support(n_marg);
  std::vector<std::vector<double>> mass(n_marg);
  int64_t joint = 1;
  for (int i = 0; i < n_marg; ++i) {
    for (int k = 0; k < marginals[i].size(); ++k) {
      if (marginals[i].weights()[k] > 0.0) {
        support[i].push_back(marginals[i].atoms()[k]);
        mass[i].push_back(marginals[i].weights()[k]);
      }
    }
    joint *= static_cast<int64_t>(support[i].size());
    if (joint > kMaxLpJointSize) {
      return MakeError(ErrorKind::kTooLarge,
                       absl::StrCat("joint support exceeds ", kMaxLpJointSize));
    }
  }
  if (n_marg == 1) return 0.0;

  // Enumerate joint cells in mixed radix, first marginal fastest.
  std::vector<std::vector<int>> cells(joint, std::vector<int>(n_marg));
  std::vector<double> cost(joint, 0.0);
  for (int64_t c = 0; c < joint; ++c) {
    int64_t rem = c;
    for (int i = 0; i < n_marg; ++i) {
      cells[c][i] = static_cast<int>(rem % support[i].size());
      rem /= static_cast<int64_t>(support[i].size());
    }
    for (int i = 0; i < n_marg; ++i) {
      for (int j = i + 1; j < n_marg; ++j) {
        cost[c] += support[i][cells[c][i]] != support[j][cells[c][j]];
      }
    }
  }

  // One equality per (marginal, support atom); for marginals after the
  // first, the last atom's row is implied by the others and dropped.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (int i = 0; i < n_marg; ++i) {
    int rows = static_cast<int>(support[i].size()) - (i > 0 ? 1 : 0);
    for (int k = 0; k < rows; ++k) {
      std::vector<double> row(joint, 0.0);
      for (int64_t c = 0; c < joint; ++c) {
        if (cells[c][i] == k) row[c] = 1.0;
      }
      a.push_back(std::move(row));
      b.push_back(mass[i][k]);
    }
  }
  absl::StatusOr<internal::LpSolution> sol =
      internal::SolveStandardFormLp(a, b, cost);
  if (!sol.ok()) return sol.status();
  return sol->objective;
}

}  // namespace dpminimax

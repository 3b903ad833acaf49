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

#include "dpminimax/experiments.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpminimax/divergences.h"
#include "dpminimax/errors.h"
#include "dpminimax/parallel.h"
#include "dpminimax/report.h"

namespace dpminimax {
namespace {

// Per-trial losses for k estimators sharing the same data.
using MultiLoss = std::function<absl::Status(Rng&, std::vector<double>&)>;

struct ChunkSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  absl::Status status;
};

absl::StatusOr<std::vector<RiskEstimate>> MonteCarloMulti(
    const MultiLoss& loss, int k, int64_t n, const PrivacyConstraint& c,
    int64_t trials, uint64_t seed, uint64_t cell, int workers) {
  if (trials < kMinRiskTrials) {
    return absl::InvalidArgumentError(
        absl::StrCat("trials must be >= ", kMinRiskTrials));
  }
  const int64_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
  std::vector<ChunkSums> parts(chunks);
  ParallelFor(chunks, workers, [&](int64_t chunk) {
    ChunkSums& part = parts[chunk];
    part.sum.assign(k, 0.0);
    part.sum_sq.assign(k, 0.0);
    std::vector<double> out(k);
    const int64_t end = std::min(trials, (chunk + 1) * kTrialChunk);
    for (int64_t t = chunk * kTrialChunk; t < end; ++t) {
      Rng rng = StreamRng(seed, cell, static_cast<uint64_t>(t));
      absl::Status s = loss(rng, out);
      if (!s.ok()) {
        part.status = s;
        return;
      }
      for (int j = 0; j < k; ++j) {
        part.sum[j] += out[j];
        part.sum_sq[j] += out[j] * out[j];
      }
    }
  });
  std::vector<double> sum(k, 0.0);
  std::vector<double> sum_sq(k, 0.0);
  for (const auto& part : parts) {
    if (!part.status.ok()) return part.status;
    for (int j = 0; j < k; ++j) {
      sum[j] += part.sum[j];
      sum_sq[j] += part.sum_sq[j];
    }
  }
  const double tt = static_cast<double>(trials);
  std::vector<RiskEstimate> result(k);
  for (int j = 0; j < k; ++j) {
    RiskEstimate& e = result[j];
    e.risk = sum[j] / tt;
    double var = std::max(0.0, (sum_sq[j] - tt * e.risk * e.risk) / (tt - 1.0));
    e.standard_error = std::sqrt(var / tt);
    e.trials = trials;
    e.seed = seed;
    e.n = n;
    e.constraint = c;
  }
  return result;
}

absl::Status CheckNs(const std::vector<int64_t>& ns) {
  if (ns.empty()) return absl::InvalidArgumentError("empty n grid");
  for (int64_t n : ns) {
    if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  }
  return absl::OkStatus();
}

absl::Status RegimeError(const std::string& what) {
  return MakeError(ErrorKind::kRegimeError, what);
}

// Cell stream ids leave room for a few estimators per cell.
uint64_t StreamId(size_t cell, int slot) { return cell * 16 + slot; }

std::vector<double> BernoulliSample(double p, int64_t n, Rng& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.Uniform() < p ? 1.0 : 0.0;
  return x;
}

double Mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

void AddSlopeIfEnough(std::vector<Slope>& slopes, const std::string& name,
                      std::vector<std::pair<double, double>> points) {
  if (points.size() < 3) return;
  auto slope = RateSlope(points);
  if (!slope.ok()) return;
  slopes.push_back(Slope{name, *slope, std::move(points)});
}

nlohmann::json ConstraintsJson(const std::vector<PrivacyConstraint>& cs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : cs) out.push_back(ConstraintToJson(c));
  return out;
}

// Largest n for which the private constant is at least the non-private one.
std::optional<double> PrivacyRegimeLimit(const PrivacyConstraint& c) {
  if (auto dp = AsDp(c)) return 2.0 / (dp->epsilon * dp->epsilon);
  if (const auto* z = std::get_if<Zcdp>(&c)) return 2.5 / z->rho;
  return std::nullopt;
}

}  // namespace

absl::StatusOr<RiskEstimate> MonteCarloLoss(const TrialLoss& loss, int64_t n,
                                            const PrivacyConstraint& c,
                                            int64_t trials, uint64_t seed,
                                            uint64_t cell, int workers) {
  auto multi = MonteCarloMulti(
      [&](Rng& rng, std::vector<double>& out) -> absl::Status {
        auto v = loss(rng);
        if (!v.ok()) return v.status();
        out[0] = *v;
        return absl::OkStatus();
      },
      1, n, c, trials, seed, cell, workers);
  if (!multi.ok()) return multi.status();
  return (*multi)[0];
}

absl::StatusOr<RiskEstimate> MonteCarloRisk(
    const ScalarSampler& sampler, double theta_star,
    const ScalarEstimator& estimator, int64_t n, const PrivacyConstraint& c,
    int64_t trials, uint64_t seed, uint64_t cell, int workers) {
  return MonteCarloLoss(
      [&](Rng& rng) -> absl::StatusOr<double> {
        std::vector<double> data = sampler(n, rng);
        auto est = estimator(data, rng);
        if (!est.ok()) return est.status();
        double e = *est - theta_star;
        return e * e;
      },
      n, c, trials, seed, cell, workers);
}

absl::StatusOr<RiskEstimate> MonteCarloRisk(
    const ParametricModel& model, const Vector& theta_star,
    const VectorEstimator& estimator, int64_t n, const PrivacyConstraint& c,
    int64_t trials, uint64_t seed, uint64_t cell, int workers) {
  if (static_cast<int>(theta_star.size()) != model.dim()) {
    return MakeError(ErrorKind::kLengthMismatch, "theta* dimension");
  }
  if (!Contains(model.space(), theta_star)) {
    return MakeError(ErrorKind::kOutOfSpace, "theta* outside the space");
  }
  return MonteCarloLoss(
      [&](Rng& rng) -> absl::StatusOr<double> {
        std::vector<Vector> data = model.Sample(theta_star, n, rng);
        auto est = estimator(data, rng);
        if (!est.ok()) return est.status();
        return SquaredDistance(*est, theta_star);
      },
      n, c, trials, seed, cell, workers);
}

absl::StatusOr<double> RateSlope(
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    return MakeError(ErrorKind::kDegenerateInput, "need at least 3 points");
  }
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, r] : points) {
    if (!(n > 0.0) || !(r > 0.0)) {
      return MakeError(ErrorKind::kDegenerateInput,
                       "n and risk must be positive");
    }
    sx += std::log(n);
    sy += std::log(r);
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k, my = sy / k;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, r] : points) {
    double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r) - my);
  }
  if (sxx <= 0.0) {
    return MakeError(ErrorKind::kDegenerateInput, "all n are equal");
  }
  return sxy / sxx;
}

const NamedBound* Cell::FindBound(const std::string& name) const {
  for (const auto& b : bounds) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

const MechanismResult* Cell::FindMechanism(const std::string& name) const {
  for (const auto& m : mechanisms) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const Slope* ExperimentReport::FindSlope(const std::string& name) const {
  for (const auto& s : slopes) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool Implies(const PrivacyConstraint& have, const PrivacyConstraint& want) {
  if (std::holds_alternative<NonPrivate>(want)) return true;
  if (std::holds_alternative<NonPrivate>(have)) return false;
  auto have_dp = AsDp(have);
  if (auto want_dp = AsDp(want)) {
    return have_dp.has_value() && have_dp->epsilon <= want_dp->epsilon &&
           have_dp->delta <= want_dp->delta;
  }
  const double rho = std::get<Zcdp>(want).rho;
  if (have_dp.has_value()) {
    return have_dp->delta == 0.0 &&
           have_dp->epsilon * have_dp->epsilon / 2.0 <= rho;
  }
  return std::get<Zcdp>(have).rho <= rho;
}

std::vector<Violation> FindViolations(const std::vector<Cell>& cells) {
  std::vector<Violation> out;
  for (size_t i = 0; i < cells.size(); ++i) {
    for (const auto& m : cells[i].mechanisms) {
      if (!m.satisfies_constraint) continue;
      for (const auto& b : cells[i].bounds) {
        const RiskEstimate& e = m.estimate;
        if (e.risk < b.value - 3.0 * e.standard_error) {
          out.push_back(Violation{static_cast<int>(i), m.name, b.name, e.risk,
                                  e.standard_error, b.value});
        }
      }
    }
  }
  return out;
}

absl::StatusOr<ExperimentReport> RunBernoulli(const BernoulliOptions& opts) {
  if (auto s = CheckNs(opts.ns); !s.ok()) return s;
  if (!(opts.theta_star >= 0.0 && opts.theta_star <= 1.0)) {
    return absl::InvalidArgumentError("theta* must lie in [0, 1]");
  }
  for (const auto& c : opts.constraints) {
    if (auto s = ValidateConstraint(c); !s.ok()) return s;
    auto dp = AsDp(c);
    if (dp.has_value() && dp->delta != 0.0) {
      return RegimeError("Bernoulli constants are stated for delta = 0");
    }
    for (int64_t n : opts.ns) {
      const double nn = static_cast<double>(n);
      if (std::holds_alternative<NonPrivate>(c) && n < 4) {
        return RegimeError(absl::StrCat("non-private cell needs n >= 4, n=", n));
      }
      if (dp.has_value() && nn * dp->epsilon < 2.0) {
        return RegimeError(absl::StrCat("DP cell needs n eps >= 2, n=", n));
      }
      if (const auto* z = std::get_if<Zcdp>(&c);
          z != nullptr && nn * std::sqrt(z->rho) < 2.0) {
        return RegimeError(absl::StrCat("zCDP cell needs n sqrt(rho) >= 2, n=",
                                        n));
      }
    }
  }

  ExperimentReport report;
  report.model = "bernoulli";
  report.seed = opts.seed;
  report.trials = opts.trials;
  report.config = {{"model", "bernoulli"},
                   {"ns", opts.ns},
                   {"constraints", ConstraintsJson(opts.constraints)},
                   {"theta_star", opts.theta_star},
                   {"trials", opts.trials},
                   {"seed", opts.seed},
                   {"workers", opts.workers}};
  const double th = opts.theta_star;
  const double p = th;

  for (const auto& c : opts.constraints) {
    for (int64_t n : opts.ns) {
      const double nn = static_cast<double>(n);
      Cell cell;
      cell.n = n;
      cell.constraint = c;
      const size_t index = report.cells.size();
      const double sampling = th * (1.0 - th) / nn;

      double alpha = 0.0;
      NamedBound constant{"constant", 0.0, ""};
      absl::StatusOr<BoundResult> test = absl::UnknownError("unset");
      std::string mech_name;
      ScalarEstimator estimator;
      double analytic = sampling;
      if (std::holds_alternative<NonPrivate>(c)) {
        alpha = 1.0 / std::sqrt(nn);
        constant.value = 1.0 / (160.0 * nn);
        constant.branch = "classical_le_cam";
        auto tv = ClosedForm(DivergenceKind::kTv,
                             BernoulliFamily{(1.0 + alpha) / 2.0},
                             BernoulliFamily{0.5}, n);
        if (!tv.ok()) return tv.status();
        test = LeCamClassical(*tv);
        mech_name = "empirical_mean";
        estimator = [](const std::vector<double>& x,
                       Rng&) -> absl::StatusOr<double> { return Mean(x); };
      } else if (auto dp = AsDp(c)) {
        const double eps = dp->epsilon;
        alpha = 1.0 / (nn * eps);
        constant.value = 1.0 / (80.0 * (nn * eps) * (nn * eps));
        constant.branch = "dp_le_cam_product";
        test = LeCamPrivate(c, n, alpha / 2.0, TestForm::kProduct);
        mech_name = "laplace_mean";
        estimator = [eps](const std::vector<double>& x, Rng& rng) {
          return LaplaceMean(x, eps, rng);
        };
        analytic += 2.0 / ((nn * eps) * (nn * eps));
      } else {
        const double rho = std::get<Zcdp>(c).rho;
        alpha = 1.0 / (nn * std::sqrt(rho));
        constant.value = 1.0 / (64.0 * nn * nn * rho);
        constant.branch = "zcdp_le_cam_product";
        test = LeCamPrivate(c, n, alpha / 2.0, TestForm::kProduct);
        mech_name = "gaussian_mean";
        estimator = [rho](const std::vector<double>& x, Rng& rng) {
          return GaussianMean(x, rho, rng);
        };
        analytic += 4.0 / (nn * nn * rho);
      }
      if (!test.ok()) return test.status();
      const double omega = alpha / 4.0;
      auto le_cam = MinimaxFromPacking(omega * omega, *test);
      if (!le_cam.ok()) return le_cam.status();
      cell.bounds.push_back(constant);
      cell.bounds.push_back(NamedBound{"le_cam", *le_cam, test->branch});
      cell.primary_bound = "constant";
      cell.extras.push_back({"alpha", alpha});

      auto risk = MonteCarloRisk(
          [p](int64_t m, Rng& rng) { return BernoulliSample(p, m, rng); }, th,
          estimator, n, c, opts.trials, opts.seed, StreamId(index, 0),
          opts.workers);
      if (!risk.ok()) return risk.status();
      cell.mechanisms.push_back(MechanismResult{mech_name, *risk, analytic, true});
      report.cells.push_back(std::move(cell));
    }
  }

  for (const auto& c : opts.constraints) {
    std::vector<std::pair<double, double>> all;
    std::vector<std::pair<double, double>> regime;
    std::vector<std::pair<double, double>> bound_points;
    std::string mech;
    auto limit = PrivacyRegimeLimit(c);
    for (const auto& cell : report.cells) {
      if (cell.constraint.index() != c.index() ||
          DescribeConstraint(cell.constraint) != DescribeConstraint(c)) {
        continue;
      }
      const MechanismResult& m = cell.mechanisms.front();
      mech = m.name;
      const double nn = static_cast<double>(cell.n);
      all.push_back({nn, m.estimate.risk});
      bound_points.push_back({nn, cell.FindBound("constant")->value});
      if (limit.has_value() && nn <= *limit * (1.0 + 1e-9)) {
        regime.push_back({nn, m.estimate.risk});
      }
    }
    const std::string tag = DescribeConstraint(c);
    AddSlopeIfEnough(report.slopes, absl::StrCat(mech, "[", tag, "]"), all);
    AddSlopeIfEnough(report.slopes,
                     absl::StrCat(mech, "[", tag, "]/privacy_regime"), regime);
    AddSlopeIfEnough(report.slopes, absl::StrCat("constant[", tag, "]"),
                     bound_points);
  }
  report.notes.push_back(
      "privacy_regime slopes use cells where the private constant is at least "
      "the non-private one (n <= 2/eps^2 for DP, n <= 2.5/rho for zCDP)");
  report.violations = FindViolations(report.cells);
  return report;
}

absl::StatusOr<ExperimentReport> RunUniform(const UniformOptions& opts) {
  if (auto s = CheckNs(opts.ns); !s.ok()) return s;
  if (!(opts.theta_star > 0.0) || !std::isfinite(opts.theta_star)) {
    return absl::InvalidArgumentError("theta* must be finite and > 0");
  }
  for (const auto& c : opts.constraints) {
    if (auto s = ValidateConstraint(c); !s.ok()) return s;
    auto dp = AsDp(c);
    if (dp.has_value() && dp->delta != 0.0) {
      return RegimeError("Uniform constants are stated for delta = 0");
    }
    for (int64_t n : opts.ns) {
      const double nn = static_cast<double>(n);
      if (std::holds_alternative<NonPrivate>(c) && n < 2) {
        return RegimeError("non-private cell needs n >= 2");
      }
      if (dp.has_value() && !(nn * dp->epsilon > 1.0)) {
        return RegimeError(absl::StrCat("DP cell needs n eps > 1, n=", n));
      }
      if (const auto* z = std::get_if<Zcdp>(&c);
          z != nullptr && !(nn * std::sqrt(z->rho) > 1.0)) {
        return RegimeError(absl::StrCat("zCDP cell needs n sqrt(rho) > 1, n=",
                                        n));
      }
    }
  }

  ExperimentReport report;
  report.model = "uniform";
  report.seed = opts.seed;
  report.trials = opts.trials;
  report.config = {{"model", "uniform"},
                   {"ns", opts.ns},
                   {"constraints", ConstraintsJson(opts.constraints)},
                   {"theta_star", opts.theta_star},
                   {"trials", opts.trials},
                   {"seed", opts.seed},
                   {"workers", opts.workers}};
  const double th = opts.theta_star;

  // The max estimator does not depend on the constraint; run it once per n.
  std::vector<RiskEstimate> max_risk;
  for (size_t i = 0; i < opts.ns.size(); ++i) {
    auto risk = MonteCarloRisk(
        [th](int64_t n, Rng& rng) {
          std::vector<double> x(n);
          for (auto& v : x) v = th * rng.Uniform();
          return x;
        },
        th,
        [](const std::vector<double>& x, Rng&) -> absl::StatusOr<double> {
          return *std::max_element(x.begin(), x.end());
        },
        opts.ns[i], NonPrivate{}, opts.trials, opts.seed, StreamId(i, 0),
        opts.workers);
    if (!risk.ok()) return risk.status();
    max_risk.push_back(*risk);
  }

  const double e_inv = std::exp(-1.0);
  for (const auto& c : opts.constraints) {
    for (size_t i = 0; i < opts.ns.size(); ++i) {
      const int64_t n = opts.ns[i];
      const double nn = static_cast<double>(n);
      Cell cell;
      cell.n = n;
      cell.constraint = c;
      double theta1 = 0.0;
      NamedBound constant{"constant", 0.0, ""};
      absl::StatusOr<BoundResult> test = absl::UnknownError("unset");
      if (std::holds_alternative<NonPrivate>(c)) {
        theta1 = th * (1.0 - 1.0 / nn);
        constant.value = e_inv * th * th / (8.0 * nn * nn);
        constant.branch = "classical_le_cam";
        auto tv = ClosedForm(DivergenceKind::kTv, UniformSupportFamily{theta1},
                             UniformSupportFamily{th}, n);
        if (!tv.ok()) return tv.status();
        test = LeCamClassical(*tv);
      } else {
        double scale = 0.0;
        if (auto dp = AsDp(c)) {
          scale = nn * dp->epsilon;
          constant.value = e_inv * th * th / (8.0 * scale * scale);
          constant.branch = "dp_le_cam_product";
        } else {
          const double rho = std::get<Zcdp>(c).rho;
          scale = nn * std::sqrt(rho);
          constant.value =
              (1.0 - 1.0 / std::sqrt(2.0)) * th * th / (8.0 * nn * nn * rho);
          constant.branch = "zcdp_le_cam_product";
        }
        theta1 = th * (1.0 - 1.0 / scale);
        auto tv = ClosedForm(DivergenceKind::kTv, UniformSupportFamily{theta1},
                             UniformSupportFamily{th}, 1);
        if (!tv.ok()) return tv.status();
        test = LeCamPrivate(c, n, *tv, TestForm::kProduct);
      }
      if (!test.ok()) return test.status();
      const double omega = (th - theta1) / 2.0;
      auto le_cam = MinimaxFromPacking(omega * omega, *test);
      if (!le_cam.ok()) return le_cam.status();
      cell.bounds.push_back(constant);
      cell.bounds.push_back(NamedBound{"le_cam", *le_cam, test->branch});
      cell.primary_bound = "constant";
      cell.extras.push_back({"theta1", theta1});
      MechanismResult m;
      m.name = "max_estimator";
      m.estimate = max_risk[i];
      m.estimate.constraint = c;
      m.analytic = 2.0 * th * th / ((nn + 1.0) * (nn + 2.0));
      m.satisfies_constraint = std::holds_alternative<NonPrivate>(c);
      cell.mechanisms.push_back(std::move(m));
      report.cells.push_back(std::move(cell));
    }
  }

  std::vector<std::pair<double, double>> points;
  for (size_t i = 0; i < opts.ns.size(); ++i) {
    points.push_back({static_cast<double>(opts.ns[i]), max_risk[i].risk});
  }
  AddSlopeIfEnough(report.slopes, "max_estimator[none]", points);
  report.notes.push_back(
      "no private Uniform estimator is run; private cells carry lower bounds "
      "and the non-private max estimator as a reference");
  report.notes.push_back(
      "private lower bounds grow as eps or rho decrease: privacy degrades the "
      "rate from 1/n^2 to 1/(n eps)^2 and 1/(n^2 rho)");
  report.notes.push_back(
      "le_cam uses the exact two-point TV, 1 - (theta1/theta2)^n, and sits "
      "slightly below constant because (1 - 1/n)^n < 1/e");
  report.violations = FindViolations(report.cells);
  return report;
}

absl::StatusOr<ExperimentReport> RunGaussian(const GaussianOptions& opts) {
  if (auto s = CheckNs(opts.ns); !s.ok()) return s;
  if (opts.d < 1) return absl::InvalidArgumentError("d must be >= 1");
  if (!(opts.sigma > 0.0) || !std::isfinite(opts.sigma)) {
    return absl::InvalidArgumentError("sigma must be finite and > 0");
  }
  for (const auto& c : opts.constraints) {
    if (auto s = ValidateConstraint(c); !s.ok()) return s;
  }
  const double gamma = 1.0 / (2.0 * opts.sigma * opts.sigma);
  const bool with_bounds = opts.d >= 66;

  ExperimentReport report;
  report.model = "gaussian";
  report.seed = opts.seed;
  report.trials = opts.trials;
  report.config = {{"model", "gaussian"},
                   {"d", opts.d},
                   {"sigma", opts.sigma},
                   {"ns", opts.ns},
                   {"constraints", ConstraintsJson(opts.constraints)},
                   {"r0", JsonNumber(opts.r0)},
                   {"trials", opts.trials},
                   {"seed", opts.seed},
                   {"workers", opts.workers}};

  // Space: R^d as an infinite ball so theta* = 0 is interior.
  auto model = GaussianMeanModel::Create(
      opts.d, opts.sigma,
      Ball{Vector(opts.d, 0.0), std::numeric_limits<double>::infinity()}, 1.0);
  if (!model.ok()) return model.status();
  const Vector theta_star(opts.d, 0.0);
  std::vector<RiskEstimate> mean_risk;
  for (size_t i = 0; i < opts.ns.size(); ++i) {
    auto risk = MonteCarloRisk(
        **model, theta_star,
        [](const std::vector<Vector>& x, Rng&) -> absl::StatusOr<Vector> {
          Vector m(x.front().size(), 0.0);
          for (const auto& v : x) {
            for (size_t k = 0; k < m.size(); ++k) m[k] += v[k];
          }
          for (auto& v : m) v /= static_cast<double>(x.size());
          return m;
        },
        opts.ns[i], NonPrivate{}, opts.trials, opts.seed, StreamId(i, 0),
        opts.workers);
    if (!risk.ok()) return risk.status();
    mean_risk.push_back(*risk);
  }

  for (const auto& c : opts.constraints) {
    for (size_t i = 0; i < opts.ns.size(); ++i) {
      const int64_t n = opts.ns[i];
      Cell cell;
      cell.n = n;
      cell.constraint = c;
      if (with_bounds) {
        auto b = KlQuadraticBounds(opts.d, n, gamma, opts.r0, c);
        if (!b.ok()) return b.status();
        cell.bounds.push_back(NamedBound{"kl_quadratic", b->value, b->branch});
        cell.primary_bound = "kl_quadratic";
      }
      const double dd = static_cast<double>(opts.d);
      const double nn = static_cast<double>(n);
      cell.rates.push_back({"statistical", opts.sigma * opts.sigma * dd / nn});
      MechanismResult m;
      m.name = "empirical_mean";
      m.estimate = mean_risk[i];
      m.estimate.constraint = c;
      m.analytic = opts.sigma * opts.sigma * dd / nn;
      m.satisfies_constraint = std::holds_alternative<NonPrivate>(c);
      cell.mechanisms.push_back(std::move(m));
      report.cells.push_back(std::move(cell));
    }
  }
  std::vector<std::pair<double, double>> points;
  for (size_t i = 0; i < opts.ns.size(); ++i) {
    points.push_back({static_cast<double>(opts.ns[i]), mean_risk[i].risk});
  }
  AddSlopeIfEnough(report.slopes, "empirical_mean[none]", points);
  if (!with_bounds) {
    report.notes.push_back("d < 66: no KL-quadratic bound evaluated");
  }
  report.violations = FindViolations(report.cells);
  return report;
}

absl::StatusOr<ExperimentReport> RunDpsgml(const DpsgmlOptions& opts) {
  if (auto s = CheckNs(opts.ns); !s.ok()) return s;
  if (opts.rhos.empty()) return absl::InvalidArgumentError("empty rho grid");
  for (double rho : opts.rhos) {
    if (auto s = ValidateConstraint(Zcdp{rho}); !s.ok()) return s;
  }
  if (opts.xi2_batches < 2) {
    return absl::InvalidArgumentError("xi2_batches must be >= 2");
  }
  auto model = GaussianMeanModel::Create(
      opts.d, opts.sigma, Ball{Vector(opts.d, 0.0), opts.radius},
      opts.lipschitz);
  if (!model.ok()) return model.status();
  const ParametricModel& mdl = **model;
  const Vector theta_star(opts.d, 0.0);

  ExperimentReport report;
  report.model = "dpsgml";
  report.seed = opts.seed;
  report.trials = opts.trials;
  report.config = {{"model", "dpsgml"},
                   {"d", opts.d},
                   {"sigma", opts.sigma},
                   {"radius", opts.radius},
                   {"lipschitz", opts.lipschitz},
                   {"m", opts.m},
                   {"ns", opts.ns},
                   {"rhos", opts.rhos},
                   {"trials", opts.trials},
                   {"xi2_batches", opts.xi2_batches},
                   {"seed", opts.seed},
                   {"workers", opts.workers}};

  const double beta = mdl.beta();
  const double dd = static_cast<double>(opts.d);
  for (int64_t n : opts.ns) {
    for (double rho : opts.rhos) {
      const size_t index = report.cells.size();
      auto cfg = MakeDpSgmlConfig(n, opts.d, rho, mdl, opts.m);
      if (!cfg.ok()) return cfg.status();
      const PrivacyConstraint c = Zcdp{rho};
      auto risks = MonteCarloMulti(
          [&](Rng& rng, std::vector<double>& out) -> absl::Status {
            std::vector<Vector> data = mdl.Sample(theta_star, n, rng);
            auto ml = ThetaMl(data, mdl);
            if (!ml.ok()) return ml.status();
            auto theta = DpSgml(data, mdl, *cfg, rng);
            if (!theta.ok()) return theta.status();
            out[0] = SquaredDistance(*theta, theta_star);
            out[1] = SquaredDistance(*ml, theta_star);
            return absl::OkStatus();
          },
          2, n, c, opts.trials, opts.seed, StreamId(index, 0), opts.workers);
      if (!risks.ok()) return risks.status();

      // xi^2 on a separate dataset from the same cell.
      Rng xi_rng = StreamRng(opts.seed, StreamId(index, 1));
      std::vector<Vector> data = mdl.Sample(theta_star, n, xi_rng);
      auto ml = ThetaMl(data, mdl);
      if (!ml.ok()) return ml.status();
      auto xi2 = EstimateXi2(data, mdl, *ml, opts.m, opts.xi2_batches, xi_rng);
      if (!xi2.ok()) return xi2.status();

      const double nn = static_cast<double>(n);
      const double rate =
          std::max(dd / (nn * nn * beta * rho), dd / (nn * beta));
      Cell cell;
      cell.n = n;
      cell.constraint = c;
      cell.mechanisms.push_back(
          MechanismResult{"dp_sgml", (*risks)[0], std::nullopt, true});
      cell.mechanisms.push_back(MechanismResult{
          "theta_ml", (*risks)[1], opts.sigma * opts.sigma * dd / nn, false});
      if (opts.d >= 66) {
        auto b = KlQuadraticBounds(opts.d, n, beta / 2.0, opts.radius, c);
        if (!b.ok()) return b.status();
        cell.bounds.push_back(NamedBound{"kl_quadratic", b->value, b->branch});
        cell.primary_bound = "kl_quadratic";
      }
      cell.rates.push_back({"lbparam_rate", rate});
      cell.extras.push_back({"ratio", (*risks)[0].risk / rate});
      cell.extras.push_back({"xi2", xi2->mean});
      cell.extras.push_back({"xi2_stderr", xi2->standard_error});
      cell.extras.push_back({"sigma2_noise", cfg->sigma2_noise});
      cell.extras.push_back({"K", static_cast<double>(cfg->K)});
      cell.extras.push_back({"eta", cfg->eta});
      report.cells.push_back(std::move(cell));
    }
  }

  for (int64_t n : opts.ns) {
    std::vector<std::pair<double, double>> points;
    for (const auto& cell : report.cells) {
      if (cell.n == n) {
        points.push_back({std::get<Zcdp>(cell.constraint).rho,
                          cell.mechanisms[0].estimate.risk});
      }
    }
    AddSlopeIfEnough(report.slopes, absl::StrCat("dp_sgml_vs_rho[n=", n, "]"),
                     points);
  }
  for (double rho : opts.rhos) {
    std::vector<std::pair<double, double>> points;
    for (const auto& cell : report.cells) {
      if (std::get<Zcdp>(cell.constraint).rho == rho) {
        points.push_back({static_cast<double>(cell.n),
                          cell.mechanisms[0].estimate.risk});
      }
    }
    AddSlopeIfEnough(report.slopes,
                     absl::StrFormat("dp_sgml_vs_n[rho=%g]", rho), points);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& cell : report.cells) {
    for (const auto& [name, v] : cell.extras) {
      if (name == "ratio") {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  report.summary.push_back({"ratio_min", lo});
  report.summary.push_back({"ratio_max", hi});
  report.summary.push_back({"ratio_spread", hi / lo});
  report.notes.push_back(
      "ratio = dp_sgml risk / max{d/(n^2 beta rho), d/(n beta)}; the rate is "
      "constant-free and is not a certified lower bound");
  if (opts.d < 66) {
    report.notes.push_back("d < 66: no KL-quadratic bound evaluated");
  }
  report.violations = FindViolations(report.cells);
  return report;
}

}  // namespace dpminimax

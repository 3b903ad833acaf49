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

// Acceptance runner. Prints one PASS/FAIL line per criterion, preceded by
// indented detail lines. `--criterion k` runs a single criterion; the exit
// status is 0 iff every criterion that ran passed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpminimax/bounds.h"
#include "dpminimax/couplings.h"
#include "dpminimax/divergences.h"
#include "dpminimax/experiments.h"
#include "dpminimax/mechanisms.h"
#include "dpminimax/packings.h"
#include "dpminimax/verify.h"
#include "oracle_values.h"
#include "property_checks.h"

namespace dpminimax {
namespace {

namespace oracle = ::dpminimax::oracle;

// Collects sub-checks for one criterion.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      std::cout << "  FAIL " << what << "\n";
    } else if (verbose_) {
      std::cout << "  ok   " << what << "\n";
    }
  }
  void Near(double got, double want, double tol, const std::string& what) {
    Expect(std::abs(got - want) <= tol,
           absl::StrFormat("%s: got %.17g want %.17g tol %g", what, got, want,
                           tol));
  }
  template <typename T>
  bool Ok(const absl::StatusOr<T>& r, const std::string& what) {
    Expect(r.ok(), what + (r.ok() ? "" : ": " + r.status().ToString()));
    return r.ok();
  }
  void Note(const std::string& line) { std::cout << "  " << line << "\n"; }
  void set_verbose(bool v) { verbose_ = v; }
  bool passed() const { return failed_ == 0 && total_ > 0; }
  int total() const { return total_; }
  int failed() const { return failed_; }

 private:
  int total_ = 0;
  int failed_ = 0;
  bool verbose_ = false;
};

Matrix ConstantTvs(int num, double tv) {
  Matrix m(num, std::vector<double>(num, tv));
  for (int i = 0; i < num; ++i) m[i][i] = 0.0;
  return m;
}

DiscreteDistribution Dist(std::vector<int64_t> atoms,
                          std::vector<double> weights) {
  return *DiscreteDistribution::Create(std::move(atoms), std::move(weights));
}

std::vector<DiscreteDistribution> ThreePointTriple() {
  return {Dist({-1, 0}, {0.5, 0.5}), Dist({0, 1}, {0.5, 0.5}),
          Dist({1, -1}, {0.5, 0.5})};
}

// 1. Every frozen reference value through the library, to 1e-9.
void Criterion1(Checker& c) {
  constexpr double kTol = 1e-9;
  auto b75 = *DiscreteDistribution::Bernoulli(0.75);
  auto b50 = *DiscreteDistribution::Bernoulli(0.5);
  c.Near(Kl(b75, b50), oracle::kKlBern075Vs05, kTol, "kl bernoulli");
  c.Near(*Renyi(2.0, b75, b50), oracle::kRenyi2Bern075Vs05, kTol,
         "renyi2 bernoulli");
  c.Near(*ClosedForm(DivergenceKind::kTv, UniformSupportFamily{0.5},
                     UniformSupportFamily{1.0}, 2),
         oracle::kUniformTvHalfN2, kTol, "uniform tv");
  c.Near(FanoClassical(3, {0, 0, 0})->value, oracle::kFanoN3Zero, kTol,
         "fano N=3");
  c.Near(FanoClassical(16, std::vector<double>(16, 0.5))->value,
         oracle::kFanoN16Half, kTol, "fano N=16");
  c.Near(LeCamPrivate(PureDp{std::log(2.0)}, 2, 0.5, TestForm::kProduct)->value,
         oracle::kLeCamDpProduct, kTol, "le cam dp product");
  c.Near(LeCamPrivate(ApproxDp{0.693, 0.0}, 2, 0.5, TestForm::kProduct)->value,
         oracle::kLeCamDpProductEps0693, kTol, "le cam dp product eps=0.693");
  c.Near(LeCamPrivate(Zcdp{0.02}, 4, 0.5, TestForm::kProduct)->value,
         oracle::kLeCamZcdpProduct, kTol, "le cam zcdp product");
  c.Near(FanoPrivate(NonPrivate{}, 1, 3, ConstantTvs(3, 0.0),
                     std::vector<double>{0, 0, 0}, TestForm::kJoint)
             ->value,
         oracle::kFanoN3Zero, kTol, "fano private classical branch");
  c.Near(FanoPrivate(PureDp{0.1}, 1, 8, ConstantTvs(8, 0.5), std::nullopt,
                     TestForm::kJoint)
             ->value,
         oracle::kFanoDpMatchingN8, kTol, "fano dp N=8");
  c.Near(FanoPrivate(Zcdp{0.1}, 1, 3, ConstantTvs(3, 1.0), std::nullopt,
                     TestForm::kJoint)
             ->value,
         oracle::kFanoZcdpN3, kTol, "fano zcdp N=3");
  c.Near(*Similarity(PureDp{1.0}, LeCamMatch{},
                     {Dataset{{0, 0, 0}}, Dataset{{1, 1, 1}}}),
         oracle::kLeCamMatchDh3Eps1, kTol, "le cam match similarity");
  c.Near(*Similarity(Zcdp{0.1}, FanoMatch{},
                     {Dataset{{0}}, Dataset{{1}}, Dataset{{2}}}),
         oracle::kZcdpFanoMatchN3, kTol, "zcdp fano match similarity");
  GroupTerms g = DpGroupTerms(std::log(2.0), 0.01, 2);
  c.Near(g.multiplicative, oracle::kGroupMult, kTol, "group multiplicative");
  c.Near(g.additive, oracle::kGroupAdd, kTol, "group additive");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  c.Near(KlQuadraticBounds(66, 100, 0.5, 10, Zcdp{0.01})->value,
         oracle::kKlQuadZcdp, kTol, "kl-quadratic zcdp");
  c.Near(KlQuadraticBounds(66, 100, 0.5, kInf, NonPrivate{})->value,
         oracle::kKlQuadNonPrivateInfR0, kTol, "kl-quadratic non-private");
  c.Near(KlQuadraticBounds(66, 100, 0.5, 10, PureDp{0.1})->value,
         oracle::kKlQuadPureDp, kTol, "kl-quadratic pure dp");
  c.Near(KlQuadraticBounds(66, 100, 0.5, 10, Zcdp{1e-8})->value,
         oracle::kKlQuadZcdpStrong, kTol, "kl-quadratic zcdp privacy branch");
  c.Near(KlQuadraticBounds(66, 100, 0.5, 10, PureDp{1e-4})->value,
         oracle::kKlQuadPureDpStrong, kTol, "kl-quadratic pure dp privacy branch");
  auto model = *GaussianMeanModel::Create(5, 1.0, Ball{Vector(5, 0.0), 10}, 1);
  auto cfg = *MakeDpSgmlConfig(100, 5, 0.1, *model, 10);
  c.Near(cfg.sigma2_noise, oracle::kSgmlSigma2, kTol, "dp-sgml sigma^2");
  c.Near(cfg.eta, 0.5, kTol, "dp-sgml eta");
  c.Expect(cfg.K == static_cast<int64_t>(std::ceil(oracle::kSgmlKReal)) &&
               cfg.K == 11,
           "dp-sgml K = 11");
  c.Near(RandomizedResponseKeep(std::log(3.0)), 0.75, kTol, "rr keep");
  c.Near(0.25 / 100 + 2 / std::pow(100 * 0.1, 2), oracle::kLaplaceMse, kTol,
         "laplace mse");
  c.Near(0.25 / 100 + std::pow(2 / (100 * std::sqrt(0.01)), 2),
         oracle::kGaussianMse, kTol, "gaussian mse");
  UniformOptions uo;
  uo.trials = kMinRiskTrials;
  uo.constraints = {NonPrivate{}};
  if (auto u = RunUniform(uo); c.Ok(u, "uniform run")) {
    const double want[] = {oracle::kUniformMaxMseN10, oracle::kUniformMaxMseN20,
                           oracle::kUniformMaxMseN40};
    for (int i = 0; i < 3; ++i) {
      c.Near(*u->cells[i].FindMechanism("max_estimator")->analytic, want[i],
             kTol, absl::StrCat("max estimator mse n=", u->cells[i].n));
    }
    c.Near(u->cells[0].FindBound("constant")->value, oracle::kUniformConstN10,
           kTol, "uniform constant n=10");
  }
  BernoulliOptions bo;
  bo.ns = {100};
  bo.constraints = {PureDp{0.1}};
  bo.trials = kMinRiskTrials;
  if (auto b = RunBernoulli(bo); c.Ok(b, "bernoulli run")) {
    c.Near(b->cells[0].FindBound("constant")->value,
           oracle::kBernoulliDpConstN100, kTol, "bernoulli dp constant");
  }
  auto shared = *SharedUniformBernoulli({0.2, 0.5, 0.9});
  auto exact = *shared.ExactDisagreement();
  c.Near(exact[0][1], 0.3, kTol, "shared uniform 0-1");
  c.Near(exact[1][2], 0.4, kTol, "shared uniform 1-2");
  c.Near(exact[0][2], 0.7, kTol, "shared uniform 0-2");
  c.Near(RaceDisagreementBound(0.2), 1.0 / 3.0, kTol, "race bound");
  c.Expect(VarshamovGilbertSize(66, 0.25) == 8 &&
               VarshamovGilbertDistance(66, 0.25) == 17,
           "vg thresholds d=66");
  c.Expect(VarshamovGilbertSize(128, 0.25) == 55 &&
               VarshamovGilbertDistance(128, 0.25) == 32,
           "vg thresholds d=128");
  c.Near(*MinDisagreementLp(ThreePointTriple()), oracle::kThreePointLp, kTol,
         "three-point lp");
}

// 2. Marginals, maximal pair and races on 50 random triples.
void Criterion2(Checker& c) {
  constexpr int64_t kDraws = 100000;
  constexpr uint64_t kSeed = 2;
  double worst_l1 = 0.0;
  int samplers = 0;
  for (int t = 0; t < 50; ++t) {
    Rng rng = StreamRng(kSeed, 100, t);
    std::vector<DiscreteDistribution> m;
    for (int k = 0; k < 3; ++k) {
      m.push_back(testing::RandomDistribution(rng, 6, false));
    }
    std::vector<double> ps;
    for (int k = 0; k < 3; ++k) ps.push_back(0.05 + 0.9 * rng.Uniform());
    const std::string tag = absl::StrCat("triple ", t);

    auto check_marginals = [&](const CouplingStats& s, const std::string& who) {
      ++samplers;
      for (size_t i = 0; i < s.marginal_l1_error.size(); ++i) {
        worst_l1 = std::max(worst_l1, s.marginal_l1_error[i]);
        c.Expect(s.marginal_l1_error[i] <= 0.01,
                 absl::StrFormat("%s %s marginal %d l1 %.5f", tag, who, i,
                                 s.marginal_l1_error[i]));
      }
    };

    auto pair = *MaximalPair(m[0], m[1]);
    auto ps_pair = *SimulateCoupling(pair, kDraws, DeriveSeed(kSeed, t, 1));
    check_marginals(ps_pair, "maximal_pair");
    const double tv01 = Tv(m[0], m[1]);
    const double est = ps_pair.disagreement.estimates[0][1];
    const double se = ps_pair.disagreement.standard_errors[0][1];
    c.Expect(std::abs(est - tv01) <= 3 * se + 1e-12,
             absl::StrFormat("%s maximal pair %.5f vs tv %.5f (se %.5f)", tag,
                             est, tv01, se));

    auto races = *ExponentialRaces(m);
    auto rs = *SimulateCoupling(races, kDraws, DeriveSeed(kSeed, t, 2));
    check_marginals(rs, "races");
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double bound = RaceDisagreementBound(Tv(m[i], m[j]));
        c.Expect(rs.disagreement.estimates[i][j] <=
                     bound + 3 * rs.disagreement.standard_errors[i][j],
                 absl::StrFormat("%s races %d-%d %.5f vs bound %.5f", tag, i,
                                 j, rs.disagreement.estimates[i][j], bound));
      }
    }

    auto shared = *SharedUniformBernoulli(ps);
    check_marginals(
        *SimulateCoupling(shared, kDraws, DeriveSeed(kSeed, t, 3)),
        "shared_uniform");
  }
  c.Note(absl::StrFormat("%d sampler runs, worst marginal l1 %.5f", samplers,
                         worst_l1));
}

// 3. Three-point triple LP.
void Criterion3(Checker& c) {
  auto v = MinDisagreementLp(ThreePointTriple());
  if (!c.Ok(v, "lp")) return;
  double sum_tv = 0.0;
  auto m = ThreePointTriple();
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) sum_tv += Tv(m[i], m[j]);
  }
  c.Near(*v, 2.0, 1e-9, "min total disagreement");
  c.Expect(*v > sum_tv, absl::StrFormat("lp %.9f > sum tv %.9f", *v, sum_tv));
  c.Note(absl::StrFormat("min total disagreement %.9f, sum tv %.3f", *v,
                         sum_tv));
}

// 4. Exhaustive verification on randomized response kernels.
void Criterion4(Checker& c) {
  int runs = 0;
  for (double eps : {0.5, std::log(2.0), std::log(3.0)}) {
    std::vector<std::pair<std::string, FiniteMechanism>> mechs;
    mechs.push_back({"rr", *RandomizedResponseKernel(eps)});
    mechs.push_back({"rr-count n=1", *RandomizedResponseCountKernel(eps, 1)});
    mechs.push_back({"rr-count n=2", *RandomizedResponseCountKernel(eps, 2)});
    for (const auto& [name, m] : mechs) {
      const std::string tag = absl::StrFormat("%s eps=%.4f", name, eps);
      const PrivacyConstraint dp = PureDp{eps};
      const PrivacyConstraint adp = ApproxDp{eps, 0.01};
      const PrivacyConstraint z = Zcdp{eps * eps / 2};
      for (const auto& con : {dp, adp, z}) {
        const std::string ctag = tag + " " + DescribeConstraint(con);
        auto p = VerifyPrivacy(m, con);
        c.Expect(p.ok() && p->holds, ctag + " privacy");
        auto gp = VerifyGroupPrivacy(m, con);
        c.Expect(gp.ok() && gp->holds, ctag + " group privacy");
        runs += 2;
      }
      auto kl = VerifyKlDp(m, eps);
      c.Expect(kl.ok() && kl->holds, tag + " kl-dp");
      ++runs;
      for (int big_n : {2, 3}) {
        std::vector<SimilarityKind> kinds = {GlobalAnchor{}, ProjectionAnchor{0},
                                             PairwiseAnchor{}, FanoMatch{}};
        if (big_n == 2) kinds.push_back(LeCamMatch{});
        for (const auto& kind : kinds) {
          auto a = VerifyAdmissibility(m, dp, kind, big_n);
          c.Expect(a.ok() && a->holds,
                   absl::StrCat(tag, " ", SimilarityKindName(kind),
                                " N=", big_n));
          ++runs;
        }
        auto za = VerifyAdmissibility(m, z, FanoMatch{}, big_n);
        c.Expect(za.ok() && za->holds,
                 absl::StrCat(tag, " zcdp fano_match N=", big_n));
        ++runs;
      }
    }
  }
  auto id = *IdentityKernel(2, 1);
  auto w = VerifyAdmissibility(id, PureDp{std::log(3.0)}, LeCamMatch{}, 2);
  c.Expect(w.ok() && !w->holds && w->witness.has_value(),
           "identity mechanism yields an admissibility witness");
  c.Note(absl::StrCat(runs, " exhaustive checks"));
}

std::string ConstraintTag(const PrivacyConstraint& c) {
  return DescribeConstraint(c);
}

// 5. Bernoulli model.
void Criterion5(Checker& c) {
  BernoulliOptions o;
  auto r = RunBernoulli(o);
  if (!c.Ok(r, "bernoulli run")) return;
  for (const auto& cell : r->cells) {
    const std::string tag = absl::StrCat("n=", cell.n, " ",
                                         ConstraintTag(cell.constraint));
    const double nd = static_cast<double>(cell.n);
    if (const auto* p = std::get_if<PureDp>(&cell.constraint)) {
      const auto* m = cell.FindMechanism("laplace_mean");
      const double lower = 1.0 / (80 * std::pow(nd * p->epsilon, 2));
      c.Near(cell.FindBound("constant")->value, lower, 1e-15,
             tag + " constant");
      c.Expect(m->estimate.risk >= lower,
               absl::StrFormat("%s laplace risk %.6g >= %.6g", tag,
                               m->estimate.risk, lower));
      const double analytic = 0.25 / nd + 2 / std::pow(nd * p->epsilon, 2);
      c.Expect(std::abs(m->estimate.risk - analytic) <=
                   3 * m->estimate.standard_error,
               absl::StrFormat("%s laplace %.6g vs analytic %.6g (se %.3g)",
                               tag, m->estimate.risk, analytic,
                               m->estimate.standard_error));
    } else if (const auto* z = std::get_if<Zcdp>(&cell.constraint)) {
      const auto* m = cell.FindMechanism("gaussian_mean");
      const double lower = 1.0 / (64 * nd * nd * z->rho);
      c.Near(cell.FindBound("constant")->value, lower, 1e-15,
             tag + " constant");
      c.Expect(m->estimate.risk >= lower,
               absl::StrFormat("%s gaussian risk %.6g >= %.6g", tag,
                               m->estimate.risk, lower));
    }
  }
  for (const char* name : {"laplace_mean[", "gaussian_mean["}) {
    for (const auto& s : r->slopes) {
      if (s.name.rfind(name, 0) == 0 &&
          s.name.find("/privacy_regime") != std::string::npos) {
        c.Expect(std::abs(s.value + 2.0) <= 0.15,
                 absl::StrFormat("%s slope %.4f over %d points", s.name,
                                 s.value, s.points.size()));
        c.Note(absl::StrFormat("%s = %.4f", s.name, s.value));
      }
    }
  }
  c.Expect(r->violations.empty(), "no sanity violations");
}

// 6. Uniform model.
void Criterion6(Checker& c) {
  UniformOptions o;
  auto r = RunUniform(o);
  if (!c.Ok(r, "uniform run")) return;
  for (const auto& cell : r->cells) {
    const std::string tag = absl::StrCat("n=", cell.n, " ",
                                         ConstraintTag(cell.constraint));
    const double nd = static_cast<double>(cell.n);
    const auto* m = cell.FindMechanism("max_estimator");
    const double analytic = 2.0 / ((nd + 1) * (nd + 2));
    c.Expect(std::abs(m->estimate.risk - analytic) <= 0.05 * analytic,
             absl::StrFormat("%s max estimator %.6g vs %.6g", tag,
                             m->estimate.risk, analytic));
    double want = std::exp(-1.0) / (8 * nd * nd);
    if (auto dp = AsDp(cell.constraint)) {
      want = std::exp(-1.0) / (8 * std::pow(nd * dp->epsilon, 2));
    } else if (const auto* z = std::get_if<Zcdp>(&cell.constraint)) {
      want = (1 - 1 / std::sqrt(2.0)) / (8 * nd * nd * z->rho);
    }
    const double got = cell.FindBound("constant")->value;
    c.Expect(got == want,
             absl::StrFormat("%s lower bound %.17g == %.17g", tag, got, want));
    c.Expect(got <= m->estimate.risk,
             absl::StrFormat("%s lower bound %.6g <= non-private risk %.6g",
                             tag, got, m->estimate.risk));
  }
}

// 7. Gaussian model.
void Criterion7(Checker& c) {
  GaussianOptions o;
  auto r = RunGaussian(o);
  if (!c.Ok(r, "gaussian run")) return;
  for (const auto& cell : r->cells) {
    const std::string tag = absl::StrCat("n=", cell.n, " ",
                                         ConstraintTag(cell.constraint));
    const auto* m = cell.FindMechanism("empirical_mean");
    const double analytic = o.sigma * o.sigma * o.d / cell.n;
    c.Expect(std::abs(m->estimate.risk - analytic) <=
                 3 * m->estimate.standard_error,
             absl::StrFormat("%s empirical mean %.6g vs %.6g (se %.3g)", tag,
                             m->estimate.risk, analytic,
                             m->estimate.standard_error));
    const NamedBound* b = cell.FindBound("kl_quadratic");
    c.Expect(b != nullptr && b->value <= m->estimate.risk,
             absl::StrFormat("%s bound %.6g <= risk %.6g", tag,
                             b ? b->value : NAN, m->estimate.risk));
  }
}

// 8. Varshamov-Gilbert codes.
void Criterion8(Checker& c) {
  for (int d : {66, 128, 200}) {
    const double zeta = 0.25;
    auto code = VarshamovGilbert(d, zeta, 8);
    if (!c.Ok(code, absl::StrCat("code d=", d))) continue;
    const int64_t need = static_cast<int64_t>(std::ceil(std::exp(zeta * zeta * d / 2)));
    const int dist = static_cast<int>(std::ceil((0.5 - zeta) * d));
    c.Expect(code->size() >= need,
             absl::StrFormat("d=%d size %d >= %d", d, code->size(), need));
    int worst = d;
    for (int i = 0; i < code->size(); ++i) {
      std::vector<int> wi = code->Word(i);
      for (int j = i + 1; j < code->size(); ++j) {
        std::vector<int> wj = code->Word(j);
        int h = 0;
        for (int k = 0; k < d; ++k) h += wi[k] != wj[k];
        worst = std::min(worst, h);
      }
    }
    c.Expect(worst >= dist,
             absl::StrFormat("d=%d min distance %d >= %d", d, worst, dist));
    auto again = VarshamovGilbert(d, zeta, 8);
    c.Expect(again.ok() && again->limbs() == code->limbs(),
             absl::StrFormat("d=%d reproducible by seed", d));
  }
}

// 9. DP-SGML.
void Criterion9(Checker& c) {
  DpsgmlOptions base;
  // (a) zero-noise full-batch variant.
  {
    auto model = *GaussianMeanModel::Create(base.d, base.sigma,
                                            Ball{Vector(base.d, 0.0),
                                                 base.radius},
                                            base.lipschitz);
    Rng data_rng = StreamRng(9, 0);
    auto data = model->Sample(Vector(base.d, 0.0), 500, data_rng);
    Vector mean(base.d, 0.0);
    for (const auto& x : data) {
      for (int k = 0; k < base.d; ++k) mean[k] += x[k] / data.size();
    }
    DpSgmlConfig cfg;
    cfg.sigma2_noise = 0.0;
    cfg.K = 200;
    cfg.eta = 1.0 / (2.0 * model->beta());
    cfg.m = base.m;
    cfg.clip = base.lipschitz;
    cfg.lambda = model->lambda();
    cfg.batch = BatchMode::kFullBatch;
    cfg.theta0 = Vector(base.d, 1.0);
    Rng rng = StreamRng(9, 1);
    auto theta = DpSgml(data, *model, cfg, rng);
    if (c.Ok(theta, "(a) run")) {
      const double err = std::sqrt(SquaredDistance(*theta, mean));
      c.Expect(err <= 1e-6,
               absl::StrFormat("(a) zero-noise error %.3g <= 1e-6", err));
    }
  }
  // (b) slope vs rho at n = 500.
  DpsgmlOptions rho_grid = base;
  auto rb = RunDpsgml(rho_grid);
  // (c) slope vs n at rho = 0.5.
  DpsgmlOptions n_grid = base;
  n_grid.ns = {200, 500, 1000, 2000};
  n_grid.rhos = {0.5};
  auto rc = RunDpsgml(n_grid);
  if (!c.Ok(rb, "(b) run") || !c.Ok(rc, "(c) run")) return;
  const Slope* sb = rb->FindSlope("dp_sgml_vs_rho[n=500]");
  c.Expect(sb != nullptr && std::abs(sb->value + 1.0) <= 0.2,
           absl::StrFormat("(b) slope vs rho %.4f in -1 +- 0.2",
                           sb ? sb->value : NAN));
  const Slope* sc = rc->FindSlope("dp_sgml_vs_n[rho=0.5]");
  c.Expect(sc != nullptr && std::abs(sc->value + 1.0) <= 0.15,
           absl::StrFormat("(c) slope vs n %.4f in -1 +- 0.15",
                           sc ? sc->value : NAN));
  // (d) ratio spread over both grids.
  double lo = INFINITY, hi = 0.0;
  for (const auto* rep : {&*rb, &*rc}) {
    for (const auto& cell : rep->cells) {
      for (const auto& [k, v] : cell.extras) {
        if (k != "ratio") continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        c.Note(absl::StrFormat("n=%d %s ratio %.4g", cell.n,
                               DescribeConstraint(cell.constraint), v));
      }
    }
  }
  c.Expect(hi / lo <= 5.0,
           absl::StrFormat("(d) max/min ratio %.4g <= 5", hi / lo));
}

// 10. Property suites.
void Criterion10(Checker& c) {
  constexpr int kInstances = 1000;
  const uint64_t seed = testing::kPropertySeed;
  const std::pair<const char*, testing::CheckOutcome> suites[] = {
      {"pinsker", testing::CheckPinsker(seed, kInstances)},
      {"renyi monotonicity", testing::CheckRenyiMonotone(seed, kInstances)},
      {"kl tensorization", testing::CheckKlTensorization(seed, kInstances)},
      {"bound monotonicity", testing::CheckBoundMonotonicity(seed, kInstances)},
      {"pure dp == approx dp(delta=0)",
       testing::CheckPureApproxEquality(seed, kInstances)},
  };
  for (const auto& [name, o] : suites) {
    c.Expect(o.ok() && o.instances == kInstances,
             absl::StrFormat("%s: %d/%d instances pass%s", name,
                             o.instances - o.failures, o.instances,
                             o.ok() ? "" : "; first: " + o.first_failure));
  }
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Checker&)> run;
};

}  // namespace
}  // namespace dpminimax

int main(int argc, char** argv) {
  using dpminimax::Checker;
  CLI::App app{"Acceptance criteria runner"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-10)")
      ->check(CLI::Range(1, 10));
  app.add_flag("--verbose", verbose, "print passing sub-checks too");
  CLI11_PARSE(app, argc, argv);

  const std::vector<dpminimax::Criterion> all = {
      {1, "formula regression", dpminimax::Criterion1},
      {2, "coupling marginals", dpminimax::Criterion2},
      {3, "three-point lp", dpminimax::Criterion3},
      {4, "exhaustive verification", dpminimax::Criterion4},
      {5, "bernoulli model", dpminimax::Criterion5},
      {6, "uniform model", dpminimax::Criterion6},
      {7, "gaussian model", dpminimax::Criterion7},
      {8, "varshamov-gilbert", dpminimax::Criterion8},
      {9, "dp-sgml", dpminimax::Criterion9},
      {10, "property suites", dpminimax::Criterion10},
  };
  bool all_pass = true;
  for (const auto& crit : all) {
    if (only != 0 && crit.id != only) continue;
    Checker c;
    c.set_verbose(verbose);
    const auto start = std::chrono::steady_clock::now();
    crit.run(c);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::cout << (c.passed() ? "PASS" : "FAIL") << " criterion " << crit.id
              << " (" << crit.title << "): " << c.total() - c.failed() << "/"
              << c.total() << " checks, "
              << absl::StrFormat("%.2f", secs) << " s" << std::endl;
    all_pass &= c.passed();
  }
  return all_pass ? 0 : 1;
}

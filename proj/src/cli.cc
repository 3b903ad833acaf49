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

#include "dpminimax/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dpminimax/bounds.h"
#include "dpminimax/couplings.h"
#include "dpminimax/errors.h"
#include "dpminimax/experiments.h"
#include "dpminimax/mechanisms.h"
#include "dpminimax/report.h"
#include "dpminimax/verify.h"

namespace dpminimax {
namespace {

// Raised for malformed argument values that CLI11 cannot catch itself.
struct UsageError {
  std::string message;
};

std::string Num(double v) { return absl::StrFormat("%.17g", v); }

double ParseDouble(const std::string& s, const std::string& what) {
  double v = 0.0;
  if (!absl::SimpleAtod(s, &v)) {
    throw UsageError{absl::StrCat("bad number for ", what, ": '", s, "'")};
  }
  return v;
}

std::vector<double> ParseDoubles(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (absl::string_view part : absl::StrSplit(s, ',', absl::SkipEmpty())) {
    out.push_back(ParseDouble(std::string(part), what));
  }
  if (out.empty()) throw UsageError{absl::StrCat("empty list for ", what)};
  return out;
}

std::vector<int64_t> ParseInts(const std::string& s, const std::string& what) {
  std::vector<int64_t> out;
  for (absl::string_view part : absl::StrSplit(s, ',', absl::SkipEmpty())) {
    int64_t v = 0;
    if (!absl::SimpleAtoi(part, &v)) {
      throw UsageError{absl::StrCat("bad integer for ", what, ": '", part, "'")};
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError{absl::StrCat("empty list for ", what)};
  return out;
}

// "a:w,b:w;c:w,..." -> one distribution per ';'-separated group.
std::vector<DiscreteDistribution> ParseMarginals(const std::string& s) {
  std::vector<DiscreteDistribution> out;
  for (absl::string_view group : absl::StrSplit(s, ';', absl::SkipEmpty())) {
    std::vector<int64_t> atoms;
    std::vector<double> weights;
    for (absl::string_view item : absl::StrSplit(group, ',', absl::SkipEmpty())) {
      std::vector<std::string> kv = absl::StrSplit(item, ':');
      int64_t atom = 0;
      double w = 0.0;
      if (kv.size() != 2 || !absl::SimpleAtoi(kv[0], &atom) ||
          !absl::SimpleAtod(kv[1], &w)) {
        throw UsageError{absl::StrCat("bad atom:weight item '", item, "'")};
      }
      atoms.push_back(atom);
      weights.push_back(w);
    }
    auto d = DiscreteDistribution::Create(std::move(atoms), std::move(weights));
    if (!d.ok()) throw UsageError{std::string(d.status().message())};
    out.push_back(*std::move(d));
  }
  return out;
}

struct ConstraintArgs {
  bool dp = false;
  bool zcdp = false;
  bool none = false;
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<double> rho;

  void Register(CLI::App* app) {
    auto* f_dp = app->add_flag("--dp", dp, "(eps, delta)-DP constraint");
    auto* f_z = app->add_flag("--zcdp", zcdp, "rho-zCDP constraint");
    auto* f_n = app->add_flag("--none", none, "no privacy constraint");
    f_dp->excludes(f_z)->excludes(f_n);
    f_z->excludes(f_n);
    app->add_option("--eps", eps, "privacy parameter epsilon");
    app->add_option("--delta", delta, "privacy parameter delta");
    app->add_option("--rho", rho, "zCDP parameter rho");
  }

  // Explicit flags win; otherwise --eps means DP and --rho means zCDP.
  PrivacyConstraint Resolve() const {
    bool use_dp = dp || (!zcdp && !none && eps.has_value());
    bool use_z = zcdp || (!dp && !none && !eps.has_value() && rho.has_value());
    if (use_dp) {
      if (!eps.has_value()) throw UsageError{"--dp needs --eps"};
      if (delta.has_value()) return ApproxDp{*eps, *delta};
      return PureDp{*eps};
    }
    if (use_z) {
      if (!rho.has_value()) throw UsageError{"--zcdp needs --rho"};
      return Zcdp{*rho};
    }
    return NonPrivate{};
  }
};

void PrintBound(const BoundResult& r, std::ostream& out) {
  out << "constraint " << DescribeConstraint(r.constraint) << "\n";
  out << "value " << Num(r.value) << "\n";
  out << "raw " << Num(r.raw) << "\n";
  out << "branch " << r.branch << "\n";
  for (const auto& b : r.branches) {
    out << "branch." << b.name << " " << Num(b.raw) << "\n";
  }
}

// Library errors: over-cap and infeasible instances are checked failures,
// everything else is a usage problem.
int StatusExit(const absl::Status& s, std::ostream& err) {
  err << "error: " << s << "\n";
  auto kind = GetErrorKind(s);
  if (kind == ErrorKind::kTooLarge || kind == ErrorKind::kBudgetExhausted ||
      kind == ErrorKind::kInsufficientBudget ||
      s.code() == absl::StatusCode::kFailedPrecondition) {
    return kExitChecked;
  }
  return kExitUsage;
}

TestForm ParseForm(const std::string& s) {
  if (s == "joint") return TestForm::kJoint;
  if (s == "product") return TestForm::kProduct;
  throw UsageError{absl::StrCat("--form must be joint or product, got ", s)};
}

void PrintMatrix(const std::string& name, const Matrix& m, std::ostream& out) {
  out << name << "\n";
  for (const auto& row : m) {
    std::vector<std::string> cells;
    for (double v : row) cells.push_back(absl::StrFormat("%.6f", v));
    out << "  " << absl::StrJoin(cells, " ") << "\n";
  }
}

int RunCouple(const CouplingSampler& sampler, int64_t trials, uint64_t seed,
              int workers, std::ostream& out, std::ostream& err) {
  auto stats = SimulateCoupling(sampler, trials, seed, workers);
  if (!stats.ok()) return StatusExit(stats.status(), err);
  const auto& marg = sampler.marginals();
  const int k = sampler.num_marginals();
  Matrix bound(k, std::vector<double>(k, 0.0));
  Matrix tv(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      tv[i][j] = Tv(marg[i], marg[j]);
      bound[i][j] = i == j ? 0.0 : RaceDisagreementBound(tv[i][j]);
    }
  }
  out << "coupling " << sampler.kind_name() << "\n";
  out << "trials " << trials << "\nseed " << seed << "\n";
  PrintMatrix("disagreement", stats->disagreement.estimates, out);
  PrintMatrix("stderr", stats->disagreement.standard_errors, out);
  PrintMatrix("tv", tv, out);
  PrintMatrix("bound_2tv_over_1_plus_tv", bound, out);
  if (auto exact = sampler.ExactDisagreement()) {
    PrintMatrix("exact", *exact, out);
  }
  std::vector<std::string> l1;
  for (double v : stats->marginal_l1_error) l1.push_back(Num(v));
  out << "marginal_l1_error " << absl::StrJoin(l1, " ") << "\n";
  return kExitOk;
}

void PrintPrivacy(const std::string& name, const PrivacyCheck& c,
                  const FiniteMechanism& m, std::ostream& out) {
  out << name << " " << (c.holds ? "holds" : "VIOLATED") << " ("
      << c.comparisons << " comparisons)\n";
  if (c.witness.has_value()) {
    const PrivacyWitness& w = *c.witness;
    auto show = [&](int idx) {
      return absl::StrJoin(m.DatasetAt(idx).entries, "");
    };
    out << "  witness x=" << show(w.x) << " y=" << show(w.y)
        << " distance=" << w.distance;
    if (!w.event.empty()) {
      std::vector<std::string> ev;
      for (int o : w.event) ev.push_back(m.labels()[o]);
      out << " event={" << absl::StrJoin(ev, ",") << "}";
    }
    if (w.alpha > 0.0) out << " alpha=" << Num(w.alpha);
    out << " lhs=" << Num(w.lhs) << " rhs=" << Num(w.rhs) << "\n";
  }
}

std::vector<SimilarityKind> AllKinds() {
  return {GlobalAnchor{}, ProjectionAnchor{0}, LeCamMatch{}, PairwiseAnchor{},
          FanoMatch{}};
}

SimilarityKind ParseKind(const std::string& s) {
  for (const auto& k : AllKinds()) {
    if (SimilarityKindName(k) == s) return k;
  }
  throw UsageError{absl::StrCat("unknown similarity kind ", s)};
}

struct VerifyArgs {
  std::string mechanism = "rr";
  int n = 1;
  int alphabet = 2;
  std::string suite = "all";
  std::string kind = "all";
  int num_hypotheses = 2;
  int64_t trials = 20000;
  uint64_t seed = 1;
  ConstraintArgs constraint;
};

int RunVerify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  PrivacyConstraint c = a.constraint.Resolve();
  if (auto s = ValidateConstraint(c); !s.ok()) return StatusExit(s, err);
  absl::StatusOr<FiniteMechanism> m = absl::UnknownError("unset");
  // The mechanism's own epsilon defaults to the constraint's.
  double mech_eps = a.constraint.eps.value_or(
      a.constraint.rho.has_value() ? std::sqrt(2.0 * *a.constraint.rho) : 1.0);
  if (a.mechanism == "rr") {
    m = a.n == 1 ? RandomizedResponseKernel(mech_eps)
                 : RandomizedResponseProductKernel(mech_eps, a.n);
  } else if (a.mechanism == "rr-count") {
    m = RandomizedResponseCountKernel(mech_eps, a.n);
  } else if (a.mechanism == "identity") {
    m = IdentityKernel(a.alphabet, a.n);
  } else if (a.mechanism == "constant") {
    m = ConstantKernel(a.alphabet, a.n);
  } else {
    throw UsageError{absl::StrCat("unknown mechanism ", a.mechanism)};
  }
  if (!m.ok()) return StatusExit(m.status(), err);
  if (a.mechanism.rfind("rr", 0) == 0 && a.alphabet != 2) {
    throw UsageError{"randomized response needs --alphabet 2"};
  }

  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = {"privacy", "group", "kldp", "admissibility", "transport"};
  } else {
    suites = absl::StrSplit(a.suite, ',', absl::SkipEmpty());
  }
  std::vector<SimilarityKind> kinds;
  if (a.kind == "all") {
    kinds = AllKinds();
  } else {
    for (absl::string_view k : absl::StrSplit(a.kind, ',', absl::SkipEmpty())) {
      kinds.push_back(ParseKind(std::string(k)));
    }
  }
  const bool explicit_kind = a.kind != "all";

  out << "mechanism " << a.mechanism << " n=" << a.n
      << " alphabet=" << m->alphabet() << " outputs=" << m->num_outputs()
      << "\nconstraint " << DescribeConstraint(c) << "\n";
  bool all_hold = true;
  for (const auto& suite : suites) {
    if (suite == "privacy") {
      auto r = VerifyPrivacy(*m, c);
      if (!r.ok()) return StatusExit(r.status(), err);
      PrintPrivacy("privacy", *r, *m, out);
      all_hold &= r->holds;
    } else if (suite == "group") {
      auto r = VerifyGroupPrivacy(*m, c);
      if (!r.ok()) {
        if (r.status().code() != absl::StatusCode::kFailedPrecondition) {
          return StatusExit(r.status(), err);
        }
        out << "group skipped: " << r.status().message() << "\n";
        all_hold = false;
        continue;
      }
      PrintPrivacy("group", *r, *m, out);
      all_hold &= r->holds;
    } else if (suite == "kldp") {
      auto dp = AsDp(c);
      if (!dp.has_value() || dp->delta != 0.0) {
        out << "kldp skipped: needs a pure DP constraint\n";
        continue;
      }
      auto r = VerifyKlDp(*m, dp->epsilon);
      if (!r.ok()) {
        if (r.status().code() != absl::StatusCode::kFailedPrecondition) {
          return StatusExit(r.status(), err);
        }
        out << "kldp skipped: " << r.status().message() << "\n";
        all_hold = false;
        continue;
      }
      PrintPrivacy("kldp", *r, *m, out);
      all_hold &= r->holds;
    } else if (suite == "admissibility" || suite == "transport") {
      for (const auto& kind : kinds) {
        const std::string kname = SimilarityKindName(kind);
        if (suite == "admissibility") {
          auto r = VerifyAdmissibility(*m, c, kind, a.num_hypotheses);
          if (!r.ok()) {
            auto ek = GetErrorKind(r.status());
            if (!explicit_kind && (ek == ErrorKind::kKindConstraintMismatch ||
                                   ek == ErrorKind::kArityMismatch)) {
              out << "admissibility." << kname << " not applicable\n";
              continue;
            }
            return StatusExit(r.status(), err);
          }
          out << "admissibility." << kname << " "
              << (r->holds ? "holds" : "VIOLATED")
              << " worst_gap=" << Num(r->worst_gap) << " tuples=" << r->tuples
              << " tests=" << r->tests << " mechanism_satisfies_constraint="
              << (r->mechanism_satisfies_constraint ? "yes" : "no") << "\n";
          if (!r->holds && r->witness.has_value()) {
            std::vector<std::string> tuple, test;
            for (int x : r->witness->tuple) {
              tuple.push_back(absl::StrJoin(m->DatasetAt(x).entries, ""));
            }
            for (int h : r->witness->test) test.push_back(absl::StrCat(h));
            out << "  witness tuple=(" << absl::StrJoin(tuple, ",")
                << ") test=[" << absl::StrJoin(test, ",")
                << "] average_error=" << Num(r->witness->average_error)
                << " similarity=" << Num(r->witness->similarity) << "\n";
          }
          all_hold &= r->holds;
        } else {
          // Marginal i: half its mass on dataset i, the rest uniform.
          const int d = m->num_datasets();
          std::vector<DiscreteDistribution> marginals;
          for (int i = 0; i < a.num_hypotheses; ++i) {
            std::vector<int64_t> atoms;
            std::vector<double> w;
            for (int x = 0; x < d; ++x) {
              atoms.push_back(x);
              w.push_back(0.5 / d + (x == i % d ? 0.5 : 0.0));
            }
            marginals.push_back(*DiscreteDistribution::Create(atoms, w));
          }
          auto r = VerifyTransportBound(*m, c, kind, marginals, a.trials,
                                        a.seed);
          if (!r.ok()) {
            auto ek = GetErrorKind(r.status());
            if (!explicit_kind && (ek == ErrorKind::kKindConstraintMismatch ||
                                   ek == ErrorKind::kArityMismatch)) {
              out << "transport." << kname << " not applicable\n";
              continue;
            }
            return StatusExit(r.status(), err);
          }
          out << "transport." << kname << " "
              << (r->holds ? "holds" : "VIOLATED") << " lhs=" << Num(r->lhs)
              << "\n";
          for (const auto& e : r->entries) {
            out << "  " << e.coupling << " rhs=" << Num(e.rhs)
                << " stderr=" << Num(e.standard_error)
                << (e.holds ? "" : " VIOLATED") << "\n";
          }
          all_hold &= r->holds;
        }
        if (std::holds_alternative<NonPrivate>(c)) break;
      }
    } else {
      throw UsageError{absl::StrCat("unknown suite ", suite)};
    }
  }
  out << (all_hold ? "result: all checks hold" : "result: violation found")
      << "\n";
  return all_hold ? kExitOk : kExitChecked;
}

struct ExperimentArgs {
  std::string model;
  std::optional<std::string> ns;
  std::optional<std::string> eps;
  std::optional<std::string> rho;
  bool no_nonprivate = false;
  std::optional<int64_t> trials;
  uint64_t seed = 1;
  int workers = 1;
  std::optional<std::string> out;
  std::string format = "json";
  std::optional<int> d;
  std::optional<double> sigma;
  std::optional<std::string> r0;
  std::optional<double> theta;
  std::optional<double> radius;
  std::optional<double> lipschitz;
  std::optional<int64_t> m;
  std::optional<int64_t> xi2_batches;
};

std::vector<PrivacyConstraint> ResolveConstraints(
    const ExperimentArgs& a, std::vector<PrivacyConstraint> defaults) {
  if (!a.eps.has_value() && !a.rho.has_value()) {
    if (a.no_nonprivate) {
      defaults.erase(defaults.begin());
    }
    return defaults;
  }
  std::vector<PrivacyConstraint> out;
  if (!a.no_nonprivate) out.push_back(NonPrivate{});
  if (a.eps.has_value()) {
    for (double e : ParseDoubles(*a.eps, "--eps")) out.push_back(PureDp{e});
  }
  if (a.rho.has_value()) {
    for (double r : ParseDoubles(*a.rho, "--rho")) out.push_back(Zcdp{r});
  }
  return out;
}

absl::Status WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  f << text;
  if (!f) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

int RunExperiment(const ExperimentArgs& a, std::ostream& out,
                  std::ostream& err) {
  if (a.format != "json" && a.format != "csv" && a.format != "both") {
    throw UsageError{"--format must be json, csv or both"};
  }
  absl::StatusOr<ExperimentReport> report = absl::UnknownError("unset");
  if (a.model == "bernoulli") {
    BernoulliOptions o;
    if (a.ns) o.ns = ParseInts(*a.ns, "--ns");
    o.constraints = ResolveConstraints(a, o.constraints);
    if (a.theta) o.theta_star = *a.theta;
    if (a.trials) o.trials = *a.trials;
    o.seed = a.seed;
    o.workers = a.workers;
    report = RunBernoulli(o);
  } else if (a.model == "uniform") {
    UniformOptions o;
    if (a.ns) o.ns = ParseInts(*a.ns, "--ns");
    o.constraints = ResolveConstraints(a, o.constraints);
    if (a.theta) o.theta_star = *a.theta;
    if (a.trials) o.trials = *a.trials;
    o.seed = a.seed;
    o.workers = a.workers;
    report = RunUniform(o);
  } else if (a.model == "gaussian") {
    GaussianOptions o;
    if (a.ns) o.ns = ParseInts(*a.ns, "--ns");
    o.constraints = ResolveConstraints(a, o.constraints);
    if (a.d) o.d = *a.d;
    if (a.sigma) o.sigma = *a.sigma;
    if (a.r0) o.r0 = ParseDouble(*a.r0, "--r0");
    if (a.trials) o.trials = *a.trials;
    o.seed = a.seed;
    o.workers = a.workers;
    report = RunGaussian(o);
  } else {
    DpsgmlOptions o;
    if (a.ns) o.ns = ParseInts(*a.ns, "--ns");
    if (a.rho) o.rhos = ParseDoubles(*a.rho, "--rho");
    if (a.eps) throw UsageError{"dpsgml takes --rho, not --eps"};
    if (a.d) o.d = *a.d;
    if (a.sigma) o.sigma = *a.sigma;
    if (a.radius) o.radius = *a.radius;
    if (a.lipschitz) o.lipschitz = *a.lipschitz;
    if (a.m) o.m = *a.m;
    if (a.xi2_batches) o.xi2_batches = *a.xi2_batches;
    if (a.trials) o.trials = *a.trials;
    o.seed = a.seed;
    o.workers = a.workers;
    report = RunDpsgml(o);
  }
  if (!report.ok()) return StatusExit(report.status(), err);
  report->config["format"] = a.format;

  const std::string json = ReportToJson(*report).dump(2) + "\n";
  const std::string csv = ReportToCsv(*report);
  if (!a.out.has_value()) {
    if (a.format != "csv") out << json;
    if (a.format != "json") out << csv;
  } else if (a.format == "both") {
    for (const auto& [path, text] :
         {std::pair{*a.out + ".json", json}, std::pair{*a.out + ".csv", csv}}) {
      if (auto s = WriteFile(path, text); !s.ok()) return StatusExit(s, err);
    }
  } else {
    auto s = WriteFile(*a.out, a.format == "json" ? json : csv);
    if (!s.ok()) return StatusExit(s, err);
  }
  for (const auto& s : report->slopes) {
    err << "slope " << s.name << " " << Num(s.value) << "\n";
  }
  if (!report->violations.empty()) {
    for (const auto& v : report->violations) {
      err << "violation cell=" << v.cell << " mechanism=" << v.mechanism
          << " bound=" << v.bound << " risk=" << Num(v.risk)
          << " stderr=" << Num(v.standard_error) << " value=" << Num(v.value)
          << "\n";
    }
    return kExitChecked;
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Private minimax lower bounds: evaluate, verify, simulate."};
  app.name("dpminimax");
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "evaluate test bounds");
  bounds->require_subcommand(1);
  ConstraintArgs lecam_c;
  int64_t lecam_n = 0;
  double lecam_tv = 0.0;
  std::string lecam_form = "joint";
  auto* lecam = bounds->add_subcommand("lecam", "two-point bound");
  lecam_c.Register(lecam);
  lecam->add_option("--n", lecam_n, "sample size")->required();
  lecam->add_option("--tv", lecam_tv, "total variation")->required();
  lecam->add_option("--form", lecam_form, "joint or product");

  ConstraintArgs fano_c;
  int64_t fano_n = 0;
  int fano_N = 0;
  std::optional<double> fano_tv_all;
  std::optional<std::string> fano_tvs;
  std::optional<std::string> fano_kls;
  std::string fano_form = "joint";
  auto* fano = bounds->add_subcommand("fano", "N-ary test bound");
  fano_c.Register(fano);
  fano->add_option("--n", fano_n, "sample size")->required();
  fano->add_option("--N", fano_N, "number of hypotheses")->required();
  auto* tv_all =
      fano->add_option("--tv-all", fano_tv_all, "same TV for every pair");
  auto* tvs = fano->add_option("--tvs", fano_tvs,
                               "TV matrix, rows ';'-separated, ','-separated");
  tv_all->excludes(tvs);
  fano->add_option("--kls", fano_kls, "KL(P_i || Q) list");
  fano->add_option("--form", fano_form, "joint or product");

  ConstraintArgs kq_c;
  int64_t kq_d = 0, kq_n = 0;
  double kq_gamma = 0.0;
  std::string kq_r0 = "inf";
  auto* klquad = bounds->add_subcommand("klquad", "KL-quadratic minimax bound");
  kq_c.Register(klquad);
  klquad->add_option("--d", kq_d, "dimension")->required();
  klquad->add_option("--n", kq_n, "sample size")->required();
  klquad->add_option("--gamma", kq_gamma, "KL coefficient")->required();
  klquad->add_option("--r0", kq_r0, "ball radius (inf allowed)");

  // couple
  auto* couple = app.add_subcommand("couple", "coupling estimation");
  couple->require_subcommand(1);
  int64_t c_trials = 100000;
  uint64_t c_seed = 1;
  int c_workers = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--trials", c_trials, "Monte-Carlo draws");
    sub->add_option("--seed", c_seed, "master seed");
    sub->add_option("--workers", c_workers, "threads (<=0: all)");
  };
  const std::string three_point = "-1:0.5,0:0.5;0:0.5,1:0.5;1:0.5,-1:0.5";
  std::string pair_p, pair_q;
  auto* pair = couple->add_subcommand("pair", "maximal coupling of two laws");
  pair->add_option("--p", pair_p, "atom:weight list")->required();
  pair->add_option("--q", pair_q, "atom:weight list")->required();
  add_common(pair);
  std::string bern_ps;
  int bern_n = 1;
  auto* bern = couple->add_subcommand("bernoulli", "shared-uniform Bernoullis");
  bern->add_option("--ps", bern_ps, "success probabilities")->required();
  bern->add_option("--n", bern_n, "product lift to n coordinates");
  add_common(bern);
  std::string races_m = three_point;
  auto* races = couple->add_subcommand("races", "exponential races");
  races->add_option("--marginals", races_m, "';'-separated atom:weight lists");
  add_common(races);
  std::string lp_m = three_point;
  auto* lp = couple->add_subcommand("lp", "exact minimum total disagreement");
  lp->add_option("--marginals", lp_m, "';'-separated atom:weight lists");

  // verify
  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "exhaustive finite checks");
  va.constraint.Register(verify);
  verify->add_option("--mechanism", va.mechanism,
                     "rr, rr-count, identity or constant");
  verify->add_option("--n", va.n, "dataset size");
  verify->add_option("--alphabet", va.alphabet, "alphabet size");
  verify->add_option("--suite", va.suite,
                     "all or privacy,group,kldp,admissibility,transport");
  verify->add_option("--kind", va.kind, "all or similarity kind names");
  verify->add_option("--N", va.num_hypotheses, "number of hypotheses");
  verify->add_option("--trials", va.trials, "transport Monte-Carlo draws");
  verify->add_option("--seed", va.seed, "transport seed");

  // experiment
  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo studies");
  experiment->require_subcommand(1);
  std::vector<CLI::App*> models;
  for (const char* name : {"bernoulli", "gaussian", "uniform", "dpsgml"}) {
    auto* sub = experiment->add_subcommand(name, "");
    sub->add_option("--ns", ea.ns, "comma-separated sample sizes");
    sub->add_option("--rho", ea.rho, "comma-separated rho values");
    sub->add_option("--trials", ea.trials, "Monte-Carlo trials");
    sub->add_option("--seed", ea.seed, "master seed");
    sub->add_option("--workers", ea.workers, "threads (<=0: all)");
    sub->add_option("--out", ea.out, "output path");
    sub->add_option("--format", ea.format, "json, csv or both");
    sub->add_option("--d", ea.d, "dimension");
    sub->add_option("--sigma", ea.sigma, "noise scale");
    if (std::string(name) != "dpsgml") {
      sub->add_option("--eps", ea.eps, "comma-separated eps values");
      sub->add_flag("--no-nonprivate", ea.no_nonprivate,
                    "omit the non-private cells");
      sub->add_option("--theta", ea.theta, "true parameter");
      sub->add_option("--r0", ea.r0, "ball radius for the bound");
    } else {
      sub->add_option("--radius", ea.radius, "parameter ball radius");
      sub->add_option("--L", ea.lipschitz, "gradient clip norm");
      sub->add_option("--m", ea.m, "batch size");
      sub->add_option("--xi2-batches", ea.xi2_batches, "batches for xi^2");
    }
    models.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) {
      failing = sub;
      for (auto* inner : sub->get_subcommands()) failing = inner;
    }
    err << failing->help();
    return kExitUsage;
  }

  try {
    if (*lecam) {
      PrivacyConstraint c = lecam_c.Resolve();
      TestForm form = ParseForm(lecam_form);
      absl::StatusOr<BoundResult> r =
          std::holds_alternative<NonPrivate>(c) && form == TestForm::kJoint
              ? LeCamClassical(lecam_tv)
              : LeCamPrivate(c, lecam_n, lecam_tv, form);
      if (!r.ok()) return StatusExit(r.status(), err);
      PrintBound(*r, out);
      return kExitOk;
    }
    if (*fano) {
      PrivacyConstraint c = fano_c.Resolve();
      if (fano_N < 2) throw UsageError{"--N must be >= 2"};
      Matrix m(fano_N, std::vector<double>(fano_N, 0.0));
      if (fano_tv_all.has_value()) {
        for (int i = 0; i < fano_N; ++i) {
          for (int j = 0; j < fano_N; ++j) {
            if (i != j) m[i][j] = *fano_tv_all;
          }
        }
      } else if (fano_tvs.has_value()) {
        m.clear();
        for (absl::string_view row : absl::StrSplit(*fano_tvs, ';')) {
          m.push_back(ParseDoubles(std::string(row), "--tvs"));
        }
      } else {
        throw UsageError{"fano needs --tv-all or --tvs"};
      }
      std::optional<std::vector<double>> kls;
      if (fano_kls.has_value()) kls = ParseDoubles(*fano_kls, "--kls");
      auto r = FanoPrivate(c, fano_n, fano_N, m, kls, ParseForm(fano_form));
      if (!r.ok()) return StatusExit(r.status(), err);
      PrintBound(*r, out);
      return kExitOk;
    }
    if (*klquad) {
      PrivacyConstraint c = kq_c.Resolve();
      double r0 = ParseDouble(kq_r0, "--r0");
      auto r = KlQuadraticBounds(kq_d, kq_n, kq_gamma, r0, c);
      if (!r.ok()) return StatusExit(r.status(), err);
      out << "constraint " << DescribeConstraint(c) << "\n";
      out << "value " << Num(r->value) << "\nbranch " << r->branch << "\n";
      return kExitOk;
    }
    if (*pair) {
      auto p = ParseMarginals(pair_p);
      auto q = ParseMarginals(pair_q);
      if (p.size() != 1 || q.size() != 1) {
        throw UsageError{"--p and --q take one distribution each"};
      }
      auto s = MaximalPair(p[0], q[0]);
      if (!s.ok()) return StatusExit(s.status(), err);
      return RunCouple(*s, c_trials, c_seed, c_workers, out, err);
    }
    if (*bern) {
      auto s = SharedUniformBernoulli(ParseDoubles(bern_ps, "--ps"));
      if (!s.ok()) return StatusExit(s.status(), err);
      if (bern_n > 1) {
        auto lifted = ProductLift(*s, bern_n);
        if (!lifted.ok()) return StatusExit(lifted.status(), err);
        return RunCouple(*lifted, c_trials, c_seed, c_workers, out, err);
      }
      return RunCouple(*s, c_trials, c_seed, c_workers, out, err);
    }
    if (*races) {
      auto s = ExponentialRaces(ParseMarginals(races_m));
      if (!s.ok()) return StatusExit(s.status(), err);
      return RunCouple(*s, c_trials, c_seed, c_workers, out, err);
    }
    if (*lp) {
      auto marginals = ParseMarginals(lp_m);
      auto v = MinDisagreementLp(marginals);
      if (!v.ok()) return StatusExit(v.status(), err);
      double tv_sum = 0.0;
      for (size_t i = 0; i < marginals.size(); ++i) {
        for (size_t j = i + 1; j < marginals.size(); ++j) {
          tv_sum += Tv(marginals[i], marginals[j]);
        }
      }
      out << "min_total_disagreement " << absl::StrFormat("%.9f", *v) << "\n";
      out << "sum_pairwise_tv " << absl::StrFormat("%.9f", tv_sum) << "\n";
      return kExitOk;
    }
    if (*verify) return RunVerify(va, out, err);
    for (auto* sub : models) {
      if (*sub) {
        ea.model = sub->get_name();
        return RunExperiment(ea, out, err);
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace dpminimax

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

#include "dpminimax/report.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpminimax/experiments.h"

namespace dpminimax {
namespace {

nlohmann::json PairsToJson(
    const std::vector<std::pair<std::string, double>>& pairs) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : pairs) out[k] = JsonNumber(v);
  return out;
}

std::string CsvNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.17g", v);
}

}  // namespace

nlohmann::json JsonNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json ConstraintToJson(const PrivacyConstraint& c) {
  nlohmann::json j = {{"kind", ConstraintKind(c)}};
  if (const auto* p = std::get_if<PureDp>(&c)) {
    j["eps"] = JsonNumber(p->epsilon);
  } else if (const auto* a = std::get_if<ApproxDp>(&c)) {
    j["eps"] = JsonNumber(a->epsilon);
    j["delta"] = JsonNumber(a->delta);
  } else if (const auto* z = std::get_if<Zcdp>(&c)) {
    j["rho"] = JsonNumber(z->rho);
  }
  return j;
}

nlohmann::json ReportToJson(const ExperimentReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : report.cells) {
    nlohmann::json mechanisms = nlohmann::json::object();
    for (const auto& m : cell.mechanisms) {
      nlohmann::json e = {
          {"risk", JsonNumber(m.estimate.risk)},
          {"stderr", JsonNumber(m.estimate.standard_error)},
          {"trials", m.estimate.trials},
          {"satisfies_constraint", m.satisfies_constraint},
      };
      e["analytic"] =
          m.analytic.has_value() ? JsonNumber(*m.analytic) : nlohmann::json();
      mechanisms[m.name] = std::move(e);
    }
    nlohmann::json bounds = nlohmann::json::object();
    for (const auto& b : cell.bounds) {
      bounds[b.name] = {{"value", JsonNumber(b.value)}, {"branch", b.branch}};
    }
    cells.push_back({{"n", cell.n},
                     {"constraint", ConstraintToJson(cell.constraint)},
                     {"mechanisms", std::move(mechanisms)},
                     {"bounds", std::move(bounds)},
                     {"primary_bound", cell.primary_bound},
                     {"rates", PairsToJson(cell.rates)},
                     {"extras", PairsToJson(cell.extras)}});
  }
  nlohmann::json slopes = nlohmann::json::array();
  for (const auto& s : report.slopes) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [x, y] : s.points) {
      pts.push_back({JsonNumber(x), JsonNumber(y)});
    }
    slopes.push_back(
        {{"name", s.name}, {"value", JsonNumber(s.value)}, {"points", pts}});
  }
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"cell", v.cell},
                          {"mechanism", v.mechanism},
                          {"bound", v.bound},
                          {"risk", JsonNumber(v.risk)},
                          {"stderr", JsonNumber(v.standard_error)},
                          {"value", JsonNumber(v.value)}});
  }
  nlohmann::json grid = {{"ns", nlohmann::json::array()},
                         {"constraints", nlohmann::json::array()}};
  for (const auto& cell : report.cells) {
    if (std::find(grid["ns"].begin(), grid["ns"].end(), cell.n) ==
        grid["ns"].end()) {
      grid["ns"].push_back(cell.n);
    }
    nlohmann::json c = ConstraintToJson(cell.constraint);
    if (std::find(grid["constraints"].begin(), grid["constraints"].end(), c) ==
        grid["constraints"].end()) {
      grid["constraints"].push_back(c);
    }
  }
  return {{"schema", kReportSchema},
          {"tool_version", kToolVersion},
          {"model", report.model},
          {"seed", report.seed},
          {"trials", report.trials},
          {"config", report.config},
          {"grid", std::move(grid)},
          {"cells", std::move(cells)},
          {"slopes", std::move(slopes)},
          {"summary", PairsToJson(report.summary)},
          {"violations", std::move(violations)},
          {"notes", report.notes}};
}

std::string ReportToCsv(const ExperimentReport& report) {
  std::string out = absl::StrCat("# schema=", kReportSchema,
                                 " tool_version=", kToolVersion,
                                 " seed=", report.seed,
                                 " config=", report.config.dump(), "\n");
  out += "model,n,constraint_kind,eps,delta,rho,mechanism,risk,stderr,"
         "lower_bound,branch\n";
  for (const auto& cell : report.cells) {
    std::string eps, delta, rho;
    if (auto dp = AsDp(cell.constraint)) {
      eps = CsvNumber(dp->epsilon);
      delta = CsvNumber(dp->delta);
    } else if (const auto* z = std::get_if<Zcdp>(&cell.constraint)) {
      rho = CsvNumber(z->rho);
    }
    std::string lower, branch;
    if (const NamedBound* b = cell.FindBound(cell.primary_bound)) {
      lower = CsvNumber(b->value);
      branch = b->branch;
    }
    for (const auto& m : cell.mechanisms) {
      absl::StrAppend(&out, report.model, ",", cell.n, ",",
                      ConstraintKind(cell.constraint), ",", eps, ",", delta,
                      ",", rho, ",", m.name, ",", CsvNumber(m.estimate.risk),
                      ",", CsvNumber(m.estimate.standard_error), ",", lower,
                      ",", branch, "\n");
    }
  }
  return out;
}

}  // namespace dpminimax

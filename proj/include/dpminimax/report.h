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

// JSON and CSV serialization of experiment reports. See
// docs/report_schema.md.

#ifndef DPMINIMAX_REPORT_H_
#define DPMINIMAX_REPORT_H_

#include <string>

#include "dpminimax/bounds.h"
#include "json.hpp"

namespace dpminimax {

struct ExperimentReport;

inline constexpr char kReportSchema[] = "dpminimax.experiment_report/v1";
inline constexpr char kToolVersion[] = "0.1.0";

// Finite values as numbers; +-inf and NaN as the strings "inf", "-inf",
// "nan" (JSON has no literal for them).
nlohmann::json JsonNumber(double v);

// {"kind": ..., "eps": ..., "delta": ..., "rho": ...}, omitting fields the
// kind does not have.
nlohmann::json ConstraintToJson(const PrivacyConstraint& c);

nlohmann::json ReportToJson(const ExperimentReport& report);

// One row per cell x mechanism, preceded by a "# " metadata line carrying
// the schema, tool version, seed and compact config.
std::string ReportToCsv(const ExperimentReport& report);

}  // namespace dpminimax

#endif  // DPMINIMAX_REPORT_H_

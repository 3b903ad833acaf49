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

#ifndef DPMINIMAX_SRC_SIMPLEX_H_
#define DPMINIMAX_SRC_SIMPLEX_H_

#include <vector>

#include "absl/status/statusor.h"

namespace dpminimax::internal {

struct LpSolution {
  double objective;
  std::vector<double> x;
};

// Minimizes c.x subject to A x = b, x >= 0, with a dense two-phase simplex
// and Bland's rule (lowest eligible index enters and leaves). Rows of A are
// given densely. Returns FailedPrecondition when infeasible and OutOfRange
// when unbounded.
absl::StatusOr<LpSolution> SolveStandardFormLp(
    const std::vector<std::vector<double>>& a, const std::vector<double>& b,
    const std::vector<double>& c);

}  // namespace dpminimax::internal

#endif  // DPMINIMAX_SRC_SIMPLEX_H_

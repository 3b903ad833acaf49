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

#include "simplex.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"

namespace dpminimax::internal {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-12;
constexpr int kMaxPivots = 1000000;

class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& a,
          const std::vector<double>& b)
      : rows_(static_cast<int>(a.size())),
        structural_(a.empty() ? 0 : static_cast<int>(a[0].size())),
        cols_(structural_ + rows_),
        t_(rows_, std::vector<double>(cols_, 0.0)),
        rhs_(b),
        basis_(rows_) {
    for (int i = 0; i < rows_; ++i) {
      double sign = rhs_[i] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < structural_; ++j) t_[i][j] = sign * a[i][j];
      rhs_[i] *= sign;
      t_[i][structural_ + i] = 1.0;
      basis_[i] = structural_ + i;
    }
  }

  // Runs Bland's-rule simplex on the given column costs. Columns at or past
  // `allowed` never enter. Returns false when unbounded.
  bool Optimize(const std::vector<double>& cost, int allowed) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (IsBasic(j)) continue;
        double reduced = cost[j];
        for (int i = 0; i < rows_; ++i) reduced -= cost[basis_[i]] * t_[i][j];
        if (reduced < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= kPivotTol) continue;
        double ratio = rhs_[i] / t_[i][enter];
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leave >= 0 &&
             basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
    return true;
  }

  void Pivot(int row, int col) {
    double p = t_[row][col];
    for (double& v : t_[row]) v /= p;
    rhs_[row] /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      double f = t_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) t_[i][j] -= f * t_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  // Pivots artificial columns out of the basis; rows that cannot be pivoted
  // are redundant and removed.
  void DriveOutArtificials() {
    for (int i = 0; i < rows_;) {
      if (basis_[i] < structural_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < structural_; ++j) {
        if (!IsBasic(j) && std::abs(t_[i][j]) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        Pivot(i, col);
        ++i;
      } else {
        t_.erase(t_.begin() + i);
        rhs_.erase(rhs_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --rows_;
      }
    }
  }

  double Objective(const std::vector<double>& cost) const {
    double v = 0.0;
    for (int i = 0; i < rows_; ++i) v += cost[basis_[i]] * rhs_[i];
    return v;
  }

  std::vector<double> Solution() const {
    std::vector<double> x(structural_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

  int structural() const { return structural_; }
  int cols() const { return cols_; }

 private:
  bool IsBasic(int j) const {
    for (int b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  int rows_;
  int structural_;
  int cols_;
  std::vector<std::vector<double>> t_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
};

}  // namespace

absl::StatusOr<LpSolution> SolveStandardFormLp(
    const std::vector<std::vector<double>>& a, const std::vector<double>& b,
    const std::vector<double>& c) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError("row count mismatch");
  }
  for (const auto& row : a) {
    if (row.size() != c.size()) {
      return absl::InvalidArgumentError("column count mismatch");
    }
  }
  Tableau tab(a, b);
  std::vector<double> phase1(tab.cols(), 0.0);
  for (int j = tab.structural(); j < tab.cols(); ++j) phase1[j] = 1.0;
  tab.Optimize(phase1, tab.cols());
  if (tab.Objective(phase1) > 1e-9) {
    return absl::FailedPreconditionError("linear program is infeasible");
  }
  tab.DriveOutArtificials();
  std::vector<double> phase2(tab.cols(), 0.0);
  for (size_t j = 0; j < c.size(); ++j) phase2[j] = c[j];
  if (!tab.Optimize(phase2, tab.structural())) {
    return absl::OutOfRangeError("linear program is unbounded");
  }
  return LpSolution{tab.Objective(phase2), tab.Solution()};
}

}  // namespace dpminimax::internal

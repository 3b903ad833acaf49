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

#include "dpminimax/packings.h"

#include <bit>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "dpminimax/errors.h"
#include "dpminimax/rng.h"

namespace dpminimax {
namespace {

int LimbCount(int d) { return (d + 63) / 64; }

int LimbHamming(const std::vector<uint64_t>& a,
                const std::vector<uint64_t>& b) {
  int h = 0;
  for (size_t i = 0; i < a.size(); ++i) h += std::popcount(a[i] ^ b[i]);
  return h;
}

}  // namespace

int BinaryCode::RealizedMinDistance() const {
  int best = d_;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      best = std::min(best, Hamming(i, j));
    }
  }
  return best;
}

int BinaryCode::Bit(int word, int k) const {
  return static_cast<int>((words_[word][k / 64] >> (k % 64)) & 1u);
}

std::vector<int> BinaryCode::Word(int word) const {
  std::vector<int> out(d_);
  for (int k = 0; k < d_; ++k) out[k] = Bit(word, k);
  return out;
}

int BinaryCode::Hamming(int a, int b) const {
  return LimbHamming(words_[a], words_[b]);
}

int64_t VarshamovGilbertSize(int d, double zeta) {
  return static_cast<int64_t>(std::ceil(std::exp(zeta * zeta * d / 2.0)));
}

int VarshamovGilbertDistance(int d, double zeta) {
  // Guard against (1/2 - zeta) d landing a hair above an integer.
  double x = (0.5 - zeta) * d;
  return static_cast<int>(std::ceil(x - 1e-9));
}

absl::StatusOr<BinaryCode> VarshamovGilbert(int d, double zeta,
                                            uint64_t seed) {
  if (d < 1) return absl::InvalidArgumentError("d must be >= 1");
  if (!(zeta > 0.0 && zeta < 0.5)) {
    return absl::InvalidArgumentError("zeta must be in (0, 1/2)");
  }
  const int64_t target = VarshamovGilbertSize(d, zeta);
  const int dist = VarshamovGilbertDistance(d, zeta);
  const int limbs = LimbCount(d);
  const uint64_t top_mask =
      d % 64 == 0 ? ~uint64_t{0} : (uint64_t{1} << (d % 64)) - 1;

  for (int attempt = 0; attempt < kVgRestarts; ++attempt) {
    Rng rng = StreamRng(seed, static_cast<uint64_t>(attempt));
    BinaryCode code(d, zeta, dist);
    for (int64_t draw = 0; draw < kVgDrawBudget && code.size() < target;
         ++draw) {
      std::vector<uint64_t> word(limbs);
      for (int l = 0; l < limbs; ++l) word[l] = rng();
      word.back() &= top_mask;
      bool ok = true;
      for (const auto& kept : code.limbs()) {
        if (LimbHamming(kept, word) < dist) {
          ok = false;
          break;
        }
      }
      if (ok) code.Add(std::move(word));
    }
    if (code.size() >= target) return code;
  }
  return MakeError(ErrorKind::kBudgetExhausted,
                   absl::StrCat("no code of size ", target, " at distance ",
                                dist, " for d=", d));
}

double PackingDistance(Metric metric, const Vector& a, const Vector& b) {
  if (metric == Metric::kAbsDiff) return std::abs(a[0] - b[0]);
  return std::sqrt(SquaredDistance(a, b));
}

bool IsPacking(const Packing& packing) {
  const double need = 2.0 * packing.omega;
  for (size_t i = 0; i < packing.points.size(); ++i) {
    for (size_t j = i + 1; j < packing.points.size(); ++j) {
      double dist =
          PackingDistance(packing.metric, packing.points[i], packing.points[j]);
      if (dist < need * (1.0 - 1e-12)) return false;
    }
  }
  return true;
}

absl::StatusOr<Packing> ScaleCode(const BinaryCode& code, double alpha,
                                  const Vector& center,
                                  const std::optional<ParameterSpace>& space) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    return absl::InvalidArgumentError("alpha must be finite and >= 0");
  }
  if (static_cast<int>(center.size()) != code.d()) {
    return MakeError(ErrorKind::kLengthMismatch,
                     "center dimension differs from word length");
  }
  Packing p;
  p.metric = Metric::kEuclidean;
  for (int i = 0; i < code.size(); ++i) {
    Vector theta = center;
    for (int k = 0; k < code.d(); ++k) theta[k] += alpha * code.Bit(i, k);
    if (space.has_value() && !Contains(*space, theta)) {
      return MakeError(ErrorKind::kOutOfSpace,
                       absl::StrCat("point ", i, " lies outside the space"));
    }
    p.points.push_back(std::move(theta));
  }
  p.omega = alpha * std::sqrt(static_cast<double>(code.RealizedMinDistance())) /
            2.0;
  return p;
}

absl::StatusOr<Packing> TwoPoint(const Vector& theta1, const Vector& theta2,
                                 Metric metric) {
  if (theta1.empty() || theta1.size() != theta2.size()) {
    return MakeError(ErrorKind::kLengthMismatch, "points differ in dimension");
  }
  if (metric == Metric::kAbsDiff && theta1.size() != 1) {
    return absl::InvalidArgumentError("AbsDiff metric is one-dimensional");
  }
  if (theta1 == theta2) return absl::InvalidArgumentError("points coincide");
  Packing p;
  p.metric = metric;
  p.points = {theta1, theta2};
  p.omega = PackingDistance(metric, theta1, theta2) / 2.0;
  return p;
}

}  // namespace dpminimax

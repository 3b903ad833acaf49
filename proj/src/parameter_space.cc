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

#include "dpminimax/parameter_space.h"

#include <algorithm>
#include <cmath>

namespace dpminimax {

absl::Status ValidateSpace(const ParameterSpace& space) {
  if (const auto* box = std::get_if<Box>(&space)) {
    if (box->lo.empty() || box->lo.size() != box->hi.size()) {
      return absl::InvalidArgumentError("box bounds must have equal size >= 1");
    }
    for (size_t i = 0; i < box->lo.size(); ++i) {
      if (!(box->lo[i] < box->hi[i])) {
        return absl::InvalidArgumentError("box needs lo < hi per coordinate");
      }
    }
    return absl::OkStatus();
  }
  const Ball& ball = std::get<Ball>(space);
  if (ball.center.empty()) return absl::InvalidArgumentError("empty center");
  if (!(ball.radius > 0.0)) {
    return absl::InvalidArgumentError("ball radius must be > 0");
  }
  return absl::OkStatus();
}

int SpaceDimension(const ParameterSpace& space) {
  if (const auto* box = std::get_if<Box>(&space)) {
    return static_cast<int>(box->lo.size());
  }
  return static_cast<int>(std::get<Ball>(space).center.size());
}

Vector Project(const ParameterSpace& space, const Vector& point) {
  Vector out = point;
  if (const auto* box = std::get_if<Box>(&space)) {
    for (size_t i = 0; i < out.size(); ++i) {
      out[i] = std::clamp(out[i], box->lo[i], box->hi[i]);
    }
    return out;
  }
  const Ball& ball = std::get<Ball>(space);
  if (std::isinf(ball.radius)) return out;
  double dist = std::sqrt(SquaredDistance(point, ball.center));
  if (dist <= ball.radius) return out;
  double scale = ball.radius / dist;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = ball.center[i] + scale * (point[i] - ball.center[i]);
  }
  return out;
}

bool Contains(const ParameterSpace& space, const Vector& point,
              double tolerance) {
  if (static_cast<int>(point.size()) != SpaceDimension(space)) return false;
  if (const auto* box = std::get_if<Box>(&space)) {
    for (size_t i = 0; i < point.size(); ++i) {
      if (point[i] < box->lo[i] - tolerance || point[i] > box->hi[i] + tolerance) {
        return false;
      }
    }
    return true;
  }
  const Ball& ball = std::get<Ball>(space);
  return std::sqrt(SquaredDistance(point, ball.center)) <=
         ball.radius + tolerance;
}

double SquaredDistance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace dpminimax

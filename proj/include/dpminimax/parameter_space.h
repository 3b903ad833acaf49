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

#ifndef DPMINIMAX_PARAMETER_SPACE_H_
#define DPMINIMAX_PARAMETER_SPACE_H_

#include <variant>
#include <vector>

#include "absl/status/status.h"

namespace dpminimax {

using Vector = std::vector<double>;

// Axis-aligned box, lo[i] <= hi[i].
struct Box {
  Vector lo;
  Vector hi;
};

// Closed Euclidean ball.
struct Ball {
  Vector center;
  double radius;
};

using ParameterSpace = std::variant<Box, Ball>;

absl::Status ValidateSpace(const ParameterSpace& space);

int SpaceDimension(const ParameterSpace& space);

// Euclidean projection: coordinate clamp for a box, radial rescale for a
// ball. The point must have the space's dimension.
Vector Project(const ParameterSpace& space, const Vector& point);

bool Contains(const ParameterSpace& space, const Vector& point,
              double tolerance = 1e-12);

double SquaredDistance(const Vector& a, const Vector& b);

}  // namespace dpminimax

#endif  // DPMINIMAX_PARAMETER_SPACE_H_

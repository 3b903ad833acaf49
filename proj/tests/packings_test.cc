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

#include <cmath>
#include <vector>

#include "dpminimax/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpminimax {
namespace {

using testing::Unwrap;

TEST(VarshamovGilbert, Thresholds) {
  EXPECT_EQ(VarshamovGilbertSize(66, 0.25), 8);
  EXPECT_EQ(VarshamovGilbertDistance(66, 0.25), 17);
  EXPECT_EQ(VarshamovGilbertSize(128, 0.25), 55);
  EXPECT_EQ(VarshamovGilbertDistance(128, 0.25), 32);
}

TEST(VarshamovGilbert, CodesMeetThresholds) {
  for (int d : {66, 128, 200}) {
    auto code = Unwrap(VarshamovGilbert(d, 0.25, 42));
    EXPECT_GE(code.size(), VarshamovGilbertSize(d, 0.25)) << d;
    EXPECT_GE(code.RealizedMinDistance(), VarshamovGilbertDistance(d, 0.25));
    EXPECT_EQ(code.min_distance(), VarshamovGilbertDistance(d, 0.25));
  }
}

TEST(VarshamovGilbert, ReproducibleBySeed) {
  auto a = Unwrap(VarshamovGilbert(128, 0.25, 9));
  auto b = Unwrap(VarshamovGilbert(128, 0.25, 9));
  auto c = Unwrap(VarshamovGilbert(128, 0.25, 10));
  EXPECT_EQ(a.limbs(), b.limbs());
  EXPECT_NE(a.limbs(), c.limbs());
}

TEST(VarshamovGilbert, DimensionOne) {
  auto code = Unwrap(VarshamovGilbert(1, 0.25, 1));
  EXPECT_EQ(code.size(), 2);
  EXPECT_EQ(code.Hamming(0, 1), 1);
}

TEST(VarshamovGilbert, RejectsBadArguments) {
  EXPECT_FALSE(VarshamovGilbert(0, 0.25, 1).ok());
  EXPECT_FALSE(VarshamovGilbert(10, 0.0, 1).ok());
  EXPECT_FALSE(VarshamovGilbert(10, 0.5, 1).ok());
}

TEST(BinaryCode, BitsAndWords) {
  auto code = Unwrap(VarshamovGilbert(70, 0.25, 3));
  for (int w = 0; w < code.size(); ++w) {
    std::vector<int> bits = code.Word(w);
    ASSERT_EQ(bits.size(), 70u);
    for (int k = 0; k < 70; ++k) EXPECT_EQ(bits[k], code.Bit(w, k));
  }
  int manual = 0;
  for (int k = 0; k < 70; ++k) manual += code.Bit(0, k) != code.Bit(1, k);
  EXPECT_EQ(manual, code.Hamming(0, 1));
}

TEST(ScaleCode, SquaredDistancesWithinHammingRange) {
  auto code = Unwrap(VarshamovGilbert(66, 0.25, 5));
  auto packing = Unwrap(ScaleCode(code, 1.0, Vector(66, 0.0)));
  for (size_t i = 0; i < packing.points.size(); ++i) {
    for (size_t j = i + 1; j < packing.points.size(); ++j) {
      const double sq = SquaredDistance(packing.points[i], packing.points[j]);
      EXPECT_GE(sq, 17.0);
      EXPECT_LE(sq, 66.0);
    }
  }
  EXPECT_TRUE(IsPacking(packing));
  EXPECT_NEAR(packing.omega, std::sqrt(code.RealizedMinDistance()) / 2.0,
              1e-15);
}

TEST(ScaleCode, OutOfSpace) {
  auto code = Unwrap(VarshamovGilbert(66, 0.25, 5));
  ParameterSpace ball = Ball{Vector(66, 0.0), 1.0};
  auto r = ScaleCode(code, 1.0, Vector(66, 0.0), ball);
  EXPECT_TRUE(HasErrorKind(r.status(), ErrorKind::kOutOfSpace));
  EXPECT_TRUE(ScaleCode(code, 0.1, Vector(66, 0.0), ball).ok());
}

TEST(TwoPoint, OmegaIsHalfDistance) {
  auto p = Unwrap(TwoPoint({0.0}, {0.5}, Metric::kAbsDiff));
  EXPECT_DOUBLE_EQ(p.omega, 0.25);
  EXPECT_TRUE(IsPacking(p));
  EXPECT_FALSE(TwoPoint({1.0}, {1.0}, Metric::kAbsDiff).ok());
}

TEST(IsPacking, DetectsClosePair) {
  Packing p{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.1}}, 0.5, Metric::kEuclidean};
  EXPECT_FALSE(IsPacking(p));
}

}  // namespace
}  // namespace dpminimax

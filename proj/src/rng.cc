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

#include "dpminimax/rng.h"

#include <cmath>

namespace dpminimax {
namespace {

uint64_t Mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

Rng::result_type Rng::operator()() {
  state_ += kGolden;
  return Mix(state_);
}

double Rng::Uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double Rng::Normal() { return normal_(*this); }

double Rng::Exponential() { return -std::log1p(-Uniform()); }

double Rng::Laplace(double scale) {
  double e = Exponential();
  return ((*this)() & 1) ? scale * e : -scale * e;
}

uint64_t Rng::UniformIndex(uint64_t n) {
  std::uniform_int_distribution<uint64_t> dist(0, n - 1);
  return dist(*this);
}

uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t h = Mix(seed + kGolden);
  h = Mix(h ^ (a + 0x632be59bd9b4e019ULL));
  h = Mix(h ^ (b + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

}  // namespace dpminimax

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

#ifndef DPMINIMAX_PARALLEL_H_
#define DPMINIMAX_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace dpminimax {

// Monte-Carlo loops split trials into chunks of this size. The chunking does
// not depend on the worker count, so per-chunk partial sums reduced in chunk
// order give identical results for any number of workers.
inline constexpr int64_t kTrialChunk = 1024;

// Resolves a requested worker count; values <= 0 mean "all hardware threads".
int ResolveWorkers(int workers);

// Calls fn(i) for every i in [0, count), using up to `workers` threads.
// Blocks until all calls return. fn must be safe to call concurrently for
// distinct indices.
void ParallelFor(int64_t count, int workers,
                 const std::function<void(int64_t)>& fn);

}  // namespace dpminimax

#endif  // DPMINIMAX_PARALLEL_H_

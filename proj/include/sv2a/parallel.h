// Copyright 2026 The SV2A Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SV2A_PARALLEL_H_
#define SV2A_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace sv2a {

// Worker count for batch stages: `requested` (0 = hardware concurrency),
// capped by SV2A_THREADS when that is a positive integer. At least 1.
size_t WorkerCount(size_t requested = 0);

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index runs
// exactly once; the first exception thrown is rethrown after all workers
// stop.
void ParallelFor(size_t n, size_t workers,
                 const std::function<void(size_t)>& fn);

}  // namespace sv2a

#endif  // SV2A_PARALLEL_H_

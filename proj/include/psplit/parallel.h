// Copyright 2026 The psplit Authors.
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

#ifndef PSPLIT_PARALLEL_H_
#define PSPLIT_PARALLEL_H_

#include <cstdint>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psplit {

// kSerial is the reference path; kParallel distributes independent loop
// iterations over OpenMP threads. Both produce identical results.
enum class ExecutionPolicy { kSerial, kParallel };

inline int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(i) for i in [0, count). Iterations must write disjoint state. The
// first exception (lowest index) thrown by any iteration is rethrown.
template <typename Fn>
void ParallelFor(std::int64_t count, ExecutionPolicy policy, Fn&& fn) {
  if (policy == ExecutionPolicy::kSerial || count < 2 || MaxThreads() < 2) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::int64_t error_index = count;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace psplit

#endif  // PSPLIT_PARALLEL_H_

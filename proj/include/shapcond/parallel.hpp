/*
 * Copyright 2026 The shapcond Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SHAPCOND_PARALLEL_HPP_
#define SHAPCOND_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace shapcond {

// Runs body(i) for i in [0, n) on up to `threads` workers that pull indices
// from a shared counter. Each index runs exactly once, so results written to
// per-index slots do not depend on the thread count. The first exception
// thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

// SHAPCOND_THREADS if set and positive, otherwise 1.
int default_thread_count();

}  // namespace shapcond

#endif  // SHAPCOND_PARALLEL_HPP_

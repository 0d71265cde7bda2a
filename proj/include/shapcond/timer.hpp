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

#ifndef SHAPCOND_TIMER_HPP_
#define SHAPCOND_TIMER_HPP_

namespace shapcond {

// CPU time consumed by the calling thread, in seconds.
double thread_cpu_seconds();
// CPU time consumed by all threads of the process, in seconds.
double process_cpu_seconds();
// False when the CPU clocks are unavailable and the functions above fall
// back to wall time.
bool cpu_clock_available();
// Monotonic wall clock, in seconds.
double wall_seconds();

// Adds the CPU time spent in its scope to *sink.
class CpuTimer {
 public:
  explicit CpuTimer(double* sink) : sink_(sink), start_(thread_cpu_seconds()) {}
  ~CpuTimer() {
    if (sink_ != nullptr) *sink_ += thread_cpu_seconds() - start_;
  }
  CpuTimer(const CpuTimer&) = delete;
  CpuTimer& operator=(const CpuTimer&) = delete;

 private:
  double* sink_;
  double start_;
};

}  // namespace shapcond

#endif  // SHAPCOND_TIMER_HPP_

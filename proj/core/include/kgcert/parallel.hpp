/*
   Copyright 2026 The kgcert Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <functional>

namespace kgcert {

/// Caller-supplied parallel map: invokes body(i) for every i in [0, count).
/// Bodies write to disjoint, index-addressed slots, so results never depend
/// on scheduling. If bodies throw, the exception of the smallest index is
/// rethrown after all work has stopped.
using ParallelFor =
    std::function<void(std::size_t count, const std::function<void(std::size_t)>& body)>;

ParallelFor serial_executor();

/// Executor backed by `workers` std::threads (workers <= 1 runs serially).
ParallelFor thread_executor(unsigned workers);

} // namespace kgcert

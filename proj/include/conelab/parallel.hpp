#pragma once

#include <cstddef>
#include <functional>

namespace conelab {

// Worker count: CONELAB_THREADS if set to a positive integer, otherwise
// std::thread::hardware_concurrency().
unsigned thread_count();

// Runs body(i) for i in [0, count) across thread_count() workers. Each
// index is visited exactly once; callers write results to per-index slots
// and reduce sequentially so output does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace conelab

#pragma once

#include <cstdint>
#include <functional>

namespace advlin {

// Worker count: ADVLIN_THREADS if set (>=1), otherwise hardware default.
int thread_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks, one per
// worker. The first exception thrown by any worker is rethrown after join.
// Callers that aggregate must index results by i, never by completion order.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace advlin

#pragma once

#include <functional>

namespace metrics {

// Worker cap: METRICS_THREADS environment variable, else hardware concurrency.
int max_threads();

// Runs f(i) for i in [0, n) on up to max_threads() workers. Results must be
// written to per-index storage by the caller; scheduling is by contiguous
// chunks so the decomposition is deterministic.
void parallel_for(long n, const std::function<void(long)>& f);

} // namespace metrics

#include "metrics/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace metrics {

int max_threads() {
    if (const char* env = std::getenv("METRICS_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(long n, const std::function<void(long)>& f) {
    if (n <= 0) return;
    const int workers = static_cast<int>(std::min<long>(max_threads(), n));
    if (workers == 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    const long chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int t = 0; t < workers; ++t) {
        const long lo = t * chunk;
        const long hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi, t] {
            try {
                for (long i = lo; i < hi; ++i) f(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace metrics

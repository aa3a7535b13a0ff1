#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace fracheat {

/// Worker cap: min(hardware_concurrency, FRACHEAT_THREADS if set).
int worker_count();

/// Static-partition parallel loop. Each index is processed exactly once and
/// results must be written to caller-owned slots, so output ordering is
/// deterministic regardless of the worker count.
template <typename F>
void parallel_for_index(std::size_t n, F&& f)
{
    int workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace fracheat

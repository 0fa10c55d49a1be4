#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

#include "bgas/summation.hpp"

namespace bgas {

// Runs body(lo, hi) over a static chunking of [0, n). Chunks write to
// disjoint output; no reduction, so the split cannot affect results.
template <typename Body>
void parallel_for_chunks(std::size_t n, unsigned workers, Body&& body) {
    workers = clamp_workers(workers);
    if (n == 0) return;
    if (workers <= 1 || n < 2048) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        if (lo >= n) break;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace bgas

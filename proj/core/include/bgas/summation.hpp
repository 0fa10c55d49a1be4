#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace bgas {

// Compensated (Kahan) accumulator. Zero increments are skipped so that
// enlarging a summation domain by exactly-vanishing terms leaves the result
// bit-identical.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        if (x == 0.0) return;
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

inline unsigned clamp_workers(unsigned requested) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (requested == 0) requested = hw;
    return requested < 64 ? requested : 64;
}

// Deterministic parallel reduction: the index range is cut into fixed-size
// shards, each shard is summed with compensation, and the shard partials are
// folded in canonical shard order. The shard grid depends only on n, never on
// the worker count, so the result is invariant under the number of workers.
//
// Term must be callable as term(i, acc) and push contributions via acc.add().
template <typename Term>
double parallel_sum_sharded(std::size_t n, unsigned workers, Term&& term,
                            std::size_t shard_size = 64) {
    if (n == 0) return 0.0;
    workers = clamp_workers(workers);
    const std::size_t nshards = (n + shard_size - 1) / shard_size;
    std::vector<Kahan> partials(nshards);

    auto run_shard = [&](std::size_t sh) {
        Kahan acc;
        const std::size_t lo = sh * shard_size;
        const std::size_t hi = lo + shard_size < n ? lo + shard_size : n;
        for (std::size_t i = lo; i < hi; ++i) term(i, acc);
        partials[sh] = acc;
    };

    if (workers <= 1 || nshards == 1) {
        for (std::size_t sh = 0; sh < nshards; ++sh) run_shard(sh);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t sh = next.fetch_add(1);
                    if (sh >= nshards) return;
                    run_shard(sh);
                }
            });
        for (auto& t : pool) t.join();
    }

    Kahan total;
    for (const auto& p : partials) {
        total.add(p.sum);
        total.add(p.comp);
    }
    return total.value();
}

}  // namespace bgas

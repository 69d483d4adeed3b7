// Minimal index-parallel helper. Results are gathered per index so
// reductions stay deterministic regardless of scheduling.
#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gtc {

inline unsigned worker_count() {
    if (const char* env = std::getenv("GTC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return (unsigned)n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    unsigned use = (unsigned)std::min<std::size_t>(workers, n);
    pool.reserve(use);
    for (unsigned t = 0; t < use; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace gtc

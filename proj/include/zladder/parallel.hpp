#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace zladder {

inline int hardware_threads() {
    if (const char* env = std::getenv("ZLADDER_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned n = std::thread::hardware_concurrency();
    return n ? static_cast<int>(n) : 1;
}

// Runs fn(i) for i in [0, n).  Work items must write only to their own slots;
// results are then independent of the thread count, which keeps every
// consumer byte-reproducible.  First exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, int threads = 0) {
    if (threads <= 0) threads = hardware_threads();
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        constexpr std::size_t kChunk = 16;
        for (;;) {
            const std::size_t base = next.fetch_add(kChunk);
            if (base >= n || failed.load(std::memory_order_relaxed)) return;
            const std::size_t end = std::min(n, base + kChunk);
            try {
                for (std::size_t i = base; i < end; ++i) fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(err);
}

}  // namespace zladder

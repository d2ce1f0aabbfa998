#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace aai {

/// Run fn(i) for i in [0, n) on up to `threads` workers. Results must be
/// written to pre-sized storage indexed by i, which keeps output ordering
/// independent of the worker count. The first exception wins and is rethrown.
inline void parallel_for(long n, int threads, const std::function<void(long)>& fn) {
    if (n <= 0)
        return;
    threads = int(std::min<long>(threads, n));
    if (threads <= 1) {
        for (long i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const long i = next.fetch_add(1);
                if (i >= n)
                    break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace aai

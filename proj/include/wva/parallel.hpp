#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace wva {

/// Worker count for sweep/ensemble evaluation: WVA_THREADS when set to a
/// positive integer, hardware concurrency otherwise.
inline unsigned worker_count() {
    if (const char* env = std::getenv("WVA_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? hw : 1;
}

/// Runs fn(i) for i in [0, n) across worker threads with static partitioning.
/// Callers write results into pre-sized storage by index, so the output is
/// independent of the worker count. The first exception a worker raises is
/// rethrown on the calling thread after all workers join.
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    const unsigned workers = std::min<size_t>(worker_count(), n ? n : 1);
    if (workers <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::atomic_flag error_set = ATOMIC_FLAG_INIT;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                if (!error_set.test_and_set()) error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace wva

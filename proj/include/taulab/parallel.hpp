#pragma once

// Fixed-partition parallel loops. Work is split into index chunks that do not
// depend on the thread count, so any reduction done in chunk order is
// reproducible no matter how many workers ran.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace taulab {

/// Worker count: TAULAB_THREADS if set and positive, else the hardware count.
inline unsigned worker_count() {
    if (const char* env = std::getenv("TAULAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Calls body(i) for i in [0, count) on up to worker_count() threads.
/// The first exception thrown by any body is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

/// Maps each index to a partial result, then folds the partials in index order.
template <typename T, typename Map, typename Fold>
T parallel_reduce(std::size_t count, T init, Map&& map, Fold&& fold) {
    std::vector<T> partial(count, init);
    parallel_for(count, [&](std::size_t i) { partial[i] = map(i); });
    T acc = std::move(init);
    for (auto& p : partial) acc = fold(std::move(acc), std::move(p));
    return acc;
}

}  // namespace taulab

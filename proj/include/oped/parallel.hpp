#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace oped {

/// Global cap on worker threads used by data-parallel loops.
/// 0 means "use hardware concurrency".
inline std::atomic<int>& max_threads() {
    static std::atomic<int> value{0};
    return value;
}

inline void set_max_threads(int n) { max_threads().store(n < 0 ? 0 : n); }

inline int effective_threads(std::ptrdiff_t work_items) {
    int cap = max_threads().load();
    if (cap == 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    return static_cast<int>(std::min<std::ptrdiff_t>(cap, std::max<std::ptrdiff_t>(work_items, 1)));
}

/// Runs fn(i) for i in [begin, end) partitioned into contiguous blocks, one per
/// worker. Each index is processed exactly once and workers share no state, so
/// results are identical for any thread count. Exceptions are rethrown on the
/// calling thread.
template <typename Fn>
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end, Fn&& fn) {
    const std::ptrdiff_t n = end - begin;
    if (n <= 0) return;
    const int workers = effective_threads(n);
    if (workers == 1) {
        for (std::ptrdiff_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::ptrdiff_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::ptrdiff_t lo = begin + w * chunk;
        const std::ptrdiff_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::ptrdiff_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace oped

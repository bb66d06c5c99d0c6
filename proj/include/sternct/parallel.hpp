#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sternct {

/*
 * Run fn(c) for every c in [0, chunks) on at most `threads` workers.
 * Chunks are claimed from an atomic counter; callers make results
 * deterministic by writing into per-chunk slots (all arithmetic here is
 * exact, so combination order never matters anyway).  The first exception
 * thrown by any worker is rethrown on the calling thread.
 */
inline void parallel_chunks(std::int64_t chunks, int threads,
                            const std::function<void(std::int64_t)>& fn) {
    if (chunks <= 0) return;
    if (threads <= 1 || chunks == 1) {
        for (std::int64_t c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                fn(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    const int nworkers =
        static_cast<int>(std::min<std::int64_t>(threads, chunks));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace sternct

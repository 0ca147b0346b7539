#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace implab {

// Process-wide worker count used when a call passes threads = 0. A value of
// 0 here means std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs f(i) for i in [0, n). Work is handed out in fixed-size chunks from an
// atomic counter; f must write only to slots owned by i, which keeps results
// independent of the thread count. The first exception thrown by any f is
// rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f, std::size_t chunk = 1) {
    if (threads == 0) threads = thread_count();
    if (chunk == 0) chunk = 1;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    if (threads <= 1 || chunks <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunks) return;
            const std::size_t lo = c * chunk;
            const std::size_t hi = lo + chunk < n ? lo + chunk : n;
            try {
                for (std::size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    const std::size_t count = threads < chunks ? threads : chunks;
    std::vector<std::thread> pool;
    pool.reserve(count - 1);
    for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace implab

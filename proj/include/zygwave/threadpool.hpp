#pragma once

// Deterministic fork-join parallelism. parallel_for runs fn(i) for
// i in [0,count); each item must write only its own output slot, so results
// are independent of the thread count and reductions done afterwards in
// index order stay bit-reproducible.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zyg {

inline int& global_thread_count() {
    static int n = 1;
    return n;
}

inline void set_thread_count(int n) {
    global_thread_count() = std::max(1, n);
}

template <typename Fn>
void parallel_for(std::size_t count, const Fn& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(global_thread_count()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace zyg

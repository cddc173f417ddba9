#pragma once

// Minimal deterministic fan-out: fn(i) must be independent across i and write
// only to its own slot.  Exceptions are captured and rethrown on the caller.

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cliff {

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, bool parallel = true) {
    if (count == 0) return;
    std::size_t workers = parallel ? std::thread::hardware_concurrency() : 1;
    if (workers == 0) workers = 1;
    if (workers > count) workers = count;
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace cliff

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rwrs {

/// Worker count: explicit override when nonzero, else RWRS_THREADS, else the
/// logical core count.
std::size_t resolve_threads(std::size_t override_count = 0);

/// results[i] = fn(i) for i in [0, count).  Work is pulled from a shared
/// counter but results land by index, so the output (and any fixed-order
/// reduction over it) is independent of the worker count and schedule.
template <typename F>
auto parallel_map(std::size_t count, std::size_t threads, F&& fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> results(count);
    if (count == 0) return results;
    const std::size_t workers = std::min(threads == 0 ? 1 : threads, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

} // namespace rwrs

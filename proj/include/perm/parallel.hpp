#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace perm {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PERM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs f(trial) for trial = 0..trials-1 on a static partition and returns the
// results in index order. Each trial must be independent; the output (and any
// reduction over it) is identical for every thread count.
template <class T, class F>
std::vector<T> run_trials(std::uint64_t trials, unsigned threads, F&& f) {
    std::vector<T> out(trials);
    threads = std::min<std::uint64_t>(resolve_threads(threads), trials ? trials : 1);
    if (threads <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) out[t] = f(t);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            const std::uint64_t lo = trials * w / threads;
            const std::uint64_t hi = trials * (w + 1) / threads;
            try {
                for (std::uint64_t t = lo; t < hi; ++t) out[t] = f(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace perm

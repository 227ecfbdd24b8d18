// parallel.hpp — deterministic fork-join loop. Bodies write to index-addressed
// slots, so results are identical however the work is scheduled.
#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "qdiscord/types.hpp"

namespace qdiscord {

// Worker cap: QDISCORD_THREADS if set (0 = auto), else the hardware count.
inline Index thread_budget() {
    long requested = 0;
    if (const char* env = std::getenv("QDISCORD_THREADS")) {
        try {
            requested = std::stol(env);
        } catch (...) {
            requested = 0;
        }
    }
    if (requested > 0) return static_cast<Index>(requested);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<Index>(hw) : 1;
}

// Runs body(0..n-1), possibly concurrently. The first exception (by index)
// is rethrown after all workers join.
inline void parallel_for(Index n, const std::function<void(Index)>& body) {
    const Index workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (Index i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (Index w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (Index i = w; i < n; i += workers) {
                try {
                    body(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace qdiscord

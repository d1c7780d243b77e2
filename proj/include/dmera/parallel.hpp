#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dmera {

/// Thread budget: DMERA_THREADS if set, else hardware concurrency.
inline int thread_budget() {
    if (const char* env = std::getenv("DMERA_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Deterministic parallel map over [0, count): results are indexed, so the
/// outcome is independent of scheduling.
inline void parallel_for(int count, const std::function<void(int)>& body) {
    const int threads = std::min(thread_budget(), count > 0 ? count : 1);
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace dmera

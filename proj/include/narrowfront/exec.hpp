#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace narrowfront::exec {

inline std::atomic<unsigned>& thread_budget_ref() {
    static std::atomic<unsigned> budget{1};
    return budget;
}

inline void set_thread_budget(unsigned n) { thread_budget_ref().store(n ? n : 1); }
inline unsigned thread_budget() { return thread_budget_ref().load(); }

// Static-chunked parallel loop. Each index writes only its own slots, so the
// schedule cannot change results; reductions happen after the join.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned want = std::min<std::size_t>(thread_budget(), n);
    if (want <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(want);
    const std::size_t chunk = (n + want - 1) / want;
    for (unsigned w = 0; w < want; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace narrowfront::exec

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace sphlab {

inline unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Static range partition across worker threads.  Work items must be
// independent; each index is processed exactly once, so results do not
// depend on the thread count.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t, std::size_t)>& run_chunk) {
    const unsigned nthreads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
    if (nthreads <= 1 || count < 2) {
        run_chunk(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&run_chunk, begin, end] { run_chunk(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace sphlab

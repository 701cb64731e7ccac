#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace ffr {

// Splits [0, n) into a fixed number of chunks and runs them on `threads`
// workers.  The chunking is independent of the thread count, so any
// per-chunk accumulation merged in chunk order gives identical results for
// every --threads value.
inline void parallel_for(std::uint64_t n, int threads,
                         const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (threads <= 1 || n < 1024) {
        fn(0, n);
        return;
    }
    constexpr std::uint64_t kChunks = 64;
    const std::uint64_t chunk = (n + kChunks - 1) / kChunks;
    std::vector<std::thread> pool;
    std::atomic<std::uint64_t> nextChunk{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = nextChunk.fetch_add(1);
            const std::uint64_t lo = c * chunk;
            if (lo >= n) return;
            fn(lo, std::min(n, lo + chunk));
        }
    };
    const int count = std::min<int>(threads, static_cast<int>(kChunks));
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace ffr

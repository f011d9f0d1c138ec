#include "planarstat/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace planarstat {

unsigned worker_count() {
    if (const char* env = std::getenv("PLANARSTAT_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_chunks(std::uint64_t chunk_count, const std::function<void(std::uint64_t)>& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), chunk_count));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunk_count; ++c) fn(c);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::uint64_t c = next.fetch_add(1); c < chunk_count; c = next.fetch_add(1))
                fn(c);
        });
    for (auto& t : pool) t.join();
}

}  // namespace planarstat

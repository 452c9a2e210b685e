#include "mlnl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace mlnl {

namespace {
std::atomic<int> g_threads{1};
}

void set_worker_threads(int k) { g_threads.store(std::max(1, k)); }

int worker_threads() { return g_threads.load(); }

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn) {
    if (count <= 0)
        return;
    const int k = std::min<std::int64_t>(worker_threads(), count);
    if (k <= 1) {
        for (std::int64_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(k));
    const std::int64_t chunk = (count + k - 1) / k;
    for (int t = 0; t < k; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min(count, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace mlnl

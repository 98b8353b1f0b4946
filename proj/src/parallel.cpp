#include "vxm/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace vxm {

namespace {
int g_default_threads = 0;
}

void set_default_threads(int threads) { g_default_threads = threads < 0 ? 0 : threads; }

int default_threads() {
    if (g_default_threads > 0) return g_default_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn, int threads) {
    if (n <= 0) return;
    int workers = threads > 0 ? threads : default_threads();
    workers = static_cast<int>(std::min<std::int64_t>(workers, n));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (std::int64_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace vxm

#pragma once

#include <cstdint>
#include <functional>

namespace vxm {

// Process-wide default worker count for parallel_for (0 = hardware).
void set_default_threads(int threads);
int default_threads();

/// Run fn(i) for i in [0, n) on block-partitioned worker threads. Each index
/// is handled by exactly one thread, so writes to disjoint slots need no
/// synchronization and results do not depend on the thread count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn, int threads = 0);

} // namespace vxm

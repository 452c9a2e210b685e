#pragma once

#include <cstdint>
#include <functional>

namespace mlnl {

/// Worker-thread budget for data-parallel loops (set once by the CLI, default
/// 1).  Values below 1 are clamped to 1.
void set_worker_threads(int k);
int worker_threads();

/// Run fn(i) for each i in [0, count).  Indices are partitioned into
/// contiguous blocks across the worker threads, so any value that is computed
/// per index (e.g. one operator row) is produced by exactly one thread with a
/// fixed in-row summation order — results are bit-identical for every thread
/// count.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);

} // namespace mlnl

#pragma once

#include <cstddef>
#include <functional>

namespace ripbound {

// Worker cap for parallel sections: min(hardware_concurrency, jobs),
// further capped by the RIPBOUND_THREADS environment variable when it is
// set to a positive integer.
std::size_t worker_count(std::size_t jobs);

// Runs fn(begin, end) over a partition of [0, count) on worker_count(count)
// threads. Each index is owned by exactly one call, so writers into
// per-index slots need no synchronization and results cannot depend on the
// number of threads.
void parallel_blocks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace ripbound

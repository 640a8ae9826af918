#ifndef RWALK_PARALLEL_HPP
#define RWALK_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace rwalk {

// Thread count from REINFORCED_WALKS_THREADS, else hardware concurrency.
int default_thread_count();

// Runs chunk(begin, end) over a partition of [0, count) on `threads`
// threads (inline when threads <= 1).  Chunks are contiguous, so callers
// that write result[i] inside their chunk stay data-race free, and results
// must not depend on the partition (replicate i derives its own stream).
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& chunk);

}  // namespace rwalk

#endif  // RWALK_PARALLEL_HPP

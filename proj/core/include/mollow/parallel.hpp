#pragma once

#include <cstddef>
#include <functional>

namespace mollow {

/// Thread count to use: MOLLOW_RTS_THREADS if set, else `requested`, else
/// the hardware concurrency. Always >= 1.
unsigned resolve_thread_count(unsigned requested = 0);

/// Calls fn(i) for i in [0, n) on up to `threads` workers. After the first
/// failure no new indices start; the exception with the lowest index among
/// those that ran is rethrown once all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace mollow

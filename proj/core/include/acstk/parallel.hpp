#pragma once

#include <cstddef>
#include <functional>

namespace acstk {

/// Worker count from ACSTK_THREADS (0 or unset = hardware concurrency).
unsigned thread_count();

/// Runs body(i) for i in [0, n) over `threads` workers (0 = thread_count()).
/// Indices are handed out dynamically; callers write results into per-index
/// slots so the outcome does not depend on scheduling. The first exception
/// thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace acstk

#pragma once

#include <cstddef>
#include <functional>

namespace cinet {

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Each index is handled exactly once; callers write results into
// per-index slots so output does not depend on scheduling. The first exception
// thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace cinet

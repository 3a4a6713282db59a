#pragma once

#include <cstddef>
#include <functional>

namespace weylkit {

// Worker count for grid scans: `requested` if nonzero, else WEYLKIT_THREADS,
// else the hardware concurrency. Always at least 1.
unsigned resolve_threads(unsigned requested);

// Calls fn(i) for i in [0, n) on up to `threads` workers with a static
// partition. fn must write only to slot i of its output so results do not
// depend on the schedule. The exception from the lowest failing index
// range is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace weylkit

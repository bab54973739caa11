#pragma once

#include <cstddef>
#include <functional>

namespace ffembed {

// Runs fn(begin, end) over a static partition of [0, n). threads == 0 picks
// hardware concurrency. Deterministic as long as fn writes disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  unsigned threads = 0);

}  // namespace ffembed

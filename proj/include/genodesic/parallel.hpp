#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>

namespace genodesic {

/// Worker cap used by edge weighting, SSSP batches and convergence trials.
/// Defaults to GENODESIC_THREADS when set, else hardware concurrency.
unsigned max_threads();
void set_max_threads(unsigned n);

/// Splits [begin, end) into contiguous chunks and runs `body(lo, hi)` on each,
/// one chunk per worker. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1);

}  // namespace genodesic

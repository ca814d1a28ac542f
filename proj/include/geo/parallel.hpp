#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace geo {

/// Worker count for batch operations: GEO_NUM_THREADS when set and positive,
/// otherwise the hardware concurrency.
int num_threads();

/// Runs body(i) for i in [0, n). Work is split into contiguous chunks, so
/// results never depend on scheduling. If several indices throw, the
/// exception of the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace geo

#pragma once

#include <cstddef>
#include <functional>

namespace gatlab {

/// Worker count: GATLAB_JOBS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on worker_count() threads. Tasks are
/// claimed in index order; callers store results by index so that the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace gatlab

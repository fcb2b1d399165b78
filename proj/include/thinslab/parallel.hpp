#pragma once

#include <cstddef>
#include <functional>

namespace thinslab {

/// Runs body(begin, end) over disjoint chunks covering [0, n). Chunks may run
/// concurrently; the worker count honours THINSLAB_THREADS when set.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// Worker cap from THINSLAB_THREADS, or 0 when unset.
int thread_cap();

}  // namespace thinslab

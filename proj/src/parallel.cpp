#include "thinslab/parallel.hpp"

#include <tbb/blocked_range.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>

#include <cstdlib>
#include <memory>

namespace thinslab {

int thread_cap() {
    static const int cap = [] {
        const char* env = std::getenv("THINSLAB_THREADS");
        if (!env) return 0;
        const int v = std::atoi(env);
        return v > 0 ? v : 0;
    }();
    return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    static const auto control = [] {
        const int cap = thread_cap();
        return cap > 0 ? std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism, cap)
                       : std::unique_ptr<tbb::global_control>{};
    }();
    (void)control;
    if (n == 0) return;
    if (thread_cap() == 1) {
        body(0, n);
        return;
    }
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n),
                      [&](const tbb::blocked_range<std::size_t>& r) { body(r.begin(), r.end()); });
}

}  // namespace thinslab

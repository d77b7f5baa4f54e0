#pragma once

#include <cstddef>
#include <functional>

namespace zakharov {

// Global worker bound (the CLI --jobs flag). Zero means hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(i) for i in [0, n). Every index is visited exactly once; callers
// write results into per-index slots so reductions stay order independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace zakharov

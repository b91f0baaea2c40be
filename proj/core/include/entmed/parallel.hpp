#pragma once

#include <cstddef>
#include <functional>

namespace entmed {

// worker count: ENTMED_THREADS when set, else hardware concurrency
int max_threads();

// runs fn(i) for i in [0, n); each index is visited exactly once
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace entmed

#pragma once

#include <cstddef>
#include <functional>

namespace latfactor {

// Worker budget for parallel stages. 0 means "read LATFACTOR_THREADS, else 1".
void set_threads(unsigned n);
unsigned threads();

// Runs fn(i) for i in [0, n), spread over threads(). Results must be written to
// caller-owned slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace latfactor

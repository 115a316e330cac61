#pragma once

#include <functional>

namespace cstar {

// Worker count: min(hardware_concurrency, CSTAR_THREADS). Read once.
int worker_count();

// Runs fn(i) for i in [0, n) on a persistent pool. Blocks until done.
// Work items must write to disjoint locations; results are then independent
// of scheduling, which keeps threaded runs reproducible.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace cstar

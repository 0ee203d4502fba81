#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace wqed {

/// Worker count: explicit argument, else WQED_WORKERS, else hardware.
int resolve_workers(int requested = 0);

/// Run f(index) for index in [0, count) on a pool of workers. Tasks must be
/// independent; callers keep results in index-addressed storage so the
/// outcome does not depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f,
                  int workers = 0);

} // namespace wqed

#pragma once

#include <cstddef>
#include <functional>

namespace netregret {

/// Worker count: hardware concurrency, capped by NETREGRET_THREADS when set.
unsigned worker_count();

/// Calls fn(i) for i in [0, count) across worker_count() threads. Work items
/// are claimed dynamically; callers write results into slot i so the outcome
/// does not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace netregret

#pragma once

#include <cstddef>
#include <functional>

namespace npchange {

/// Worker count: NPCHANGE_THREADS when set and positive, otherwise
/// hardware concurrency.
std::size_t worker_count();

/// Run body(i) for i in [0, count), statically partitioned across workers.
/// Bodies must write only to their own output slot; results are then
/// independent of the worker count. Exceptions from bodies are rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace npchange

#pragma once

#include <cstdint>
#include <functional>

namespace planarstat {

/// Worker count: PLANARSTAT_THREADS when set, else hardware concurrency.
unsigned worker_count();

/// Runs fn(chunk) for every chunk in [0, chunk_count), distributed over the
/// workers. fn must only write chunk-local state; callers merge results in
/// chunk order so the outcome does not depend on the worker count.
void parallel_chunks(std::uint64_t chunk_count, const std::function<void(std::uint64_t)>& fn);

}  // namespace planarstat

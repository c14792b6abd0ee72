#pragma once

#include <cstddef>
#include <functional>

namespace assc {

/// Worker count for column-parallel stages: ASSC_THREADS if set and > 0,
/// otherwise the hardware concurrency (ASSC_THREADS=0 also means auto).
int worker_count();

/// Runs fn(begin, end) over a static contiguous partition of [0, n) using
/// `workers` threads (<=1 runs inline). Partitioning is a pure function of
/// (n, workers), so outputs written to disjoint slots are schedule-independent.
/// The first exception thrown by any worker is rethrown after the join.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace assc

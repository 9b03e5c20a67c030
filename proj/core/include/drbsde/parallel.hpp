#pragma once

#include <cstddef>
#include <functional>

namespace drbsde {

/// Worker budget: DRBSDE_THREADS when set (clamped to [1, hardware]), else
/// min(hardware_concurrency, 8).
unsigned thread_budget();

/// Runs fn(i) for i in [0, count). Splits into contiguous chunks across the
/// thread budget; runs inline when count is small or the budget is 1.
/// The first exception thrown by a worker is rethrown after all join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace drbsde

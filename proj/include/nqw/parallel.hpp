#pragma once

#include <cstddef>
#include <functional>

namespace nqw {

/// Worker cap from NQWALK_THREADS; unset or 0 means hardware concurrency.
std::size_t thread_cap();

/// Runs fn(0..n-1) on up to thread_cap() threads. The first exception thrown
/// by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nqw

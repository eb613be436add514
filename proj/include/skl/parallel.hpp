#pragma once

#include <cstddef>
#include <functional>

namespace skl {

/// Worker count: SKL_THREADS if set (>= 1), otherwise hardware concurrency.
unsigned thread_count();

/// Calls body(i) for every i in [0, count) on up to thread_count() threads.
/// Indices are split into contiguous blocks; body must only write state owned
/// by index i, which keeps results independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace skl

#pragma once

#include <cstddef>
#include <functional>

namespace isingholo {

/// Worker count: ISINGHOLO_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency().
unsigned thread_count();

/// Calls body(i) for i in [0, count) across thread_count() workers. Each index
/// is processed exactly once; callers write into pre-sized slots so results keep
/// index order. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace isingholo

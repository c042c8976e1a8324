#pragma once

#include <cstddef>
#include <functional>

#include "gstd/linalg.hpp"

namespace gstd {

/// Thread count: explicit override if > 0, else GSTDESIGN_THREADS, else hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Calls fn(i) for i in [0, n) across worker threads. fn must be safe to run concurrently.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Sums fn(i) over i in [0, n). Items are grouped into fixed chunks and chunk partials are
/// reduced pairwise in index order, so the result does not depend on the thread count.
Matrix parallel_matrix_sum(std::size_t n, int rows, int cols, const std::function<void(std::size_t, Matrix&)>& add_item);

}  // namespace gstd

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace strata {

/// Worker count: STRATA_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, count) over up to thread_count() threads. The
/// exception of the smallest failing index is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Pairwise (tree) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace strata

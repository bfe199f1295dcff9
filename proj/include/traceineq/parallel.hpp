#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace traceineq::par {

/**
 * Worker count for parallel maps. The TRACE_INEQ_THREADS environment variable
 * overrides the OpenMP default outright, so worker counts above the core
 * count are honored too (values < 1 are treated as 1; the value is read once
 * per process). Without OpenMP the count is always 1.
 */
int max_threads();

/**
 * Applies fn(i) for i in [0, count). Each index must write only to its own
 * output slot; the function gives no ordering guarantee between indices.
 * Results are bitwise independent of the worker count because no reduction
 * happens here; callers combine the slots serially in index order.
 */
template <class Fn>
void for_index(std::size_t count, Fn&& fn, bool parallel = true) {
#ifdef _OPENMP
  if (parallel && count > 1 && max_threads() > 1) {
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
    for (long long i = 0; i < n; ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < count; ++i) {
    fn(i);
  }
}

}  // namespace traceineq::par

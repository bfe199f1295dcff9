#include "traceineq/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace traceineq::par {

int max_threads() {
#ifndef _OPENMP
  return 1;
#else
  static const int cached = [] {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("TRACE_INEQ_THREADS")) {
      try {
        n = std::max(1, std::stoi(env));
      } catch (...) {
        // unparsable values leave the OpenMP default in place
      }
    }
    return n;
  }();
  return cached;
#endif
}

}  // namespace traceineq::par

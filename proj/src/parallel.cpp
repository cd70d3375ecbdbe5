#include "qfl/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qfl {

int worker_count() {
  if (const char* env = std::getenv("QFL_WORKERS"); env != nullptr && *env != '\0') {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
#ifdef _OPENMP
  return omp_get_num_procs();
#else
  return 1;
#endif
}

namespace detail {

void parallel_for_impl(std::size_t n, void (*body)(std::size_t, void*), void* ctx) {
#ifdef _OPENMP
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i), ctx);
#else
  for (std::size_t i = 0; i < n; ++i) body(i, ctx);
#endif
}

}  // namespace detail
}  // namespace qfl

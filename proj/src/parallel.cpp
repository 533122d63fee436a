#include "vrc/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vrc {

namespace {
int g_threads = 0;
}

void set_thread_count(int n) { g_threads = n < 0 ? 0 : n; }
int thread_count() { return g_threads; }

void parallel_for(int n, const std::function<void(int)>& body) {
#ifdef _OPENMP
  if (g_threads > 0) {
#pragma omp parallel for schedule(static) num_threads(g_threads)
    for (int i = 0; i < n; ++i) body(i);
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) body(i);
  }
#else
  for (int i = 0; i < n; ++i) body(i);
#endif
}

void serial_for(int n, const std::function<void(int)>& body) {
  for (int i = 0; i < n; ++i) body(i);
}

}  // namespace vrc

#pragma once

#include <functional>

namespace vrc {

// Number of OpenMP threads used by the parallel kernels. 0 = runtime default.
void set_thread_count(int n);
int thread_count();

// Static-schedule parallel loop over [0, n). Each index is processed exactly
// once and writes must be disjoint per index, so results are independent of
// the thread count.
void parallel_for(int n, const std::function<void(int)>& body);

// Serial twin of parallel_for, kept as the reference path for kernel tests
// and the benchmark.
void serial_for(int n, const std::function<void(int)>& body);

}  // namespace vrc

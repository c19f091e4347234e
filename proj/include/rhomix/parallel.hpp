#pragma once

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rhomix {

enum class ExecutionMode { Serial, Parallel };

inline bool parallel_available() {
#if defined(_OPENMP)
  return true;
#else
  return false;
#endif
}

// Runs f(i) for i in [0, n). Iterations must be independent; results keyed by
// index stay deterministic regardless of schedule. The Serial path is the
// reference implementation the tests compare against.
template <typename F>
void parallel_for(std::size_t n, ExecutionMode mode, F&& f) {
#if defined(_OPENMP)
  if (mode == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      f(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace rhomix

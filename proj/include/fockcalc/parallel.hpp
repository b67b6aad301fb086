#pragma once

#include <cstdint>
#include <exception>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace fockcalc {

/// Execution policies for the data-parallel kernels. Every hot loop is
/// written against one of these so the OpenMP path and the serial
/// reference path share nothing but the loop body.
namespace exec {

struct Serial {
  template <class F>
  void operator()(std::int64_t n, F&& body) const {
    for (std::int64_t i = 0; i < n; ++i) body(i);
  }
};

struct OpenMp {
  template <class F>
  void operator()(std::int64_t n, F&& body) const {
#if defined(_OPENMP)
    // Exceptions must not unwind out of the parallel region; the first one
    // is kept and rethrown on the calling thread.
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(static) shared(err)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical(fockcalc_exec_err)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
#else
    for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
  }
};

}  // namespace exec

inline double wall_time() {
#if defined(_OPENMP)
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

inline int hardware_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace fockcalc

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace flatpde {

/// Kernels take an Execution argument. `serial` is the reference path kept
/// for testing; `parallel` distributes independent index tuples over OpenMP
/// threads. Both produce identical results.
enum class Execution { serial, parallel };

/// Runs body(i) for i in [0, count). Results must be written to
/// preallocated slots indexed by i. The first exception thrown is rethrown.
template <class Body>
void parallel_for(std::size_t count, Execution ex, Body&& body) {
  if (ex == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex lock;
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> g(lock);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace flatpde

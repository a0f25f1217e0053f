#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace slicealg {

/// Degree of parallelism for a campaign. jobs == 1 selects the serial
/// reference loop; results are identical either way.
struct Execution {
  int jobs = 1;

  static Execution serial() { return {1}; }
  static Execution all_cores();
};

inline Execution Execution::all_cores() {
#ifdef _OPENMP
  return {omp_get_max_threads()};
#else
  return {1};
#endif
}

/// SplitMix64 finalizer; gives each trial an independent, order-free seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Runs body(i) for i in [0, count). Exceptions are captured per index and the
/// lowest-index one is rethrown after the loop, so failures are deterministic.
template <class Body>
void parallel_for(std::size_t count, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  if (exec.jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(exec.jobs)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace slicealg

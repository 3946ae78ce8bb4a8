#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <utility>

#ifdef HTACT_HAVE_OPENMP
#include <omp.h>
#endif

namespace htact {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Process-wide switch; the serial path is the reference implementation.
bool parallel_enabled();
void set_parallel(bool on);

template <class Pred>
std::size_t first_match_serial(std::size_t n, Pred&& pred) {
  for (std::size_t i = 0; i < n; ++i)
    if (pred(i)) return i;
  return npos;
}

// Smallest i < n with pred(i). Work is split into blocks so an early hit
// stops the scan; the result never depends on the thread count.
template <class Pred>
std::size_t first_match_parallel(std::size_t n, Pred&& pred, std::size_t block = 256) {
#ifdef HTACT_HAVE_OPENMP
  std::exception_ptr failure;
  std::size_t failed_at = npos;
  for (std::size_t lo = 0; lo < n; lo += block) {
    std::size_t const hi = std::min(n, lo + block);
    std::size_t best = npos;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
    for (std::size_t i = lo; i < hi; ++i) {
      if (i > best) continue;
      try {
        if (pred(i)) best = std::min(best, i);
      } catch (...) {
#pragma omp critical(htact_first_match)
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
    // The serial scan would have thrown first only if the failure precedes every hit.
    if (failure && failed_at < best) std::rethrow_exception(failure);
    if (best != npos) return best;
  }
  return npos;
#else
  (void)block;
  return first_match_serial(n, std::forward<Pred>(pred));
#endif
}

template <class Pred>
std::size_t first_match(std::size_t n, Pred&& pred) {
  if (parallel_enabled() && n > 32) return first_match_parallel(n, std::forward<Pred>(pred));
  return first_match_serial(n, std::forward<Pred>(pred));
}

// Runs fn(i) for every i < n, in parallel when enabled. If calls throw, the
// exception of the smallest index is rethrown.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn) {
#ifdef HTACT_HAVE_OPENMP
  if (parallel_enabled() && n > 1) {
    std::exception_ptr failure;
    std::size_t failed_at = npos;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
#pragma omp critical(htact_for_each)
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace htact

#pragma once

#include <cstddef>
#include <functional>

namespace dspaces {

/// Worker cap for parallel_for.  Defaults to DYADIC_SPACES_THREADS, then to
/// the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Runs body(i) for i in [0, n) over contiguous chunks.  Nested calls from a
/// worker run serially.  Callers write results into per-index slots and
/// reduce afterwards, so output never depends on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t min_parallel = 64);

}  // namespace dspaces

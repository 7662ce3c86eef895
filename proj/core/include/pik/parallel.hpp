#pragma once

#include <cstddef>
#include <functional>

namespace pik {

/// Caps the worker count used by parallel_for (0 = hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(begin, end) over a partition of [0, n) on up to max_threads()
/// workers. Chunk boundaries depend only on n and the thread cap, so callers
/// that write to disjoint output slots stay deterministic.
void parallel_for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace pik

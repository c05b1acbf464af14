#pragma once

#include <cstddef>
#include <functional>

namespace groundbound {

//! Worker count: hardware concurrency, capped by GROUNDBOUND_THREADS when set.
std::size_t worker_count();

//! Splits [0, n) into contiguous chunks and runs body(begin, end, chunk) on
//! up to worker_count() threads. Chunk boundaries depend only on n and the
//! chunk count, so callers that reduce chunk results in chunk order get
//! thread-count independent answers.
void parallel_for(std::size_t n, std::size_t chunks, const std::function<void(std::size_t, std::size_t, std::size_t)> &body);

} // namespace groundbound

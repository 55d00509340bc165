#pragma once

#include <cstddef>
#include <functional>

namespace metivier {

// Process-wide worker count for the heavy grid loops. 0 = hardware default.
void set_thread_count(int count);
int thread_count();

// Splits [begin, end) into contiguous chunks, one per worker. Each index is
// visited by exactly one worker, so writes to disjoint slots stay
// deterministic regardless of scheduling.
void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(std::size_t, std::size_t)>& body);

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace metivier

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gramsum {

/// Runs body(block) for block in [0, blocks) on up to `workers` threads.
/// Blocks are claimed dynamically; the first exception is rethrown.
template <typename Body>
void parallel_blocks(std::size_t blocks, unsigned workers, Body&& body) {
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (n <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= blocks) return;
        try {
          body(b, w);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(blocks);
          return;
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace gramsum

#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace erkit::detail {

// Runs fn(begin, end) over contiguous chunks of [0, n). Each chunk writes
// only its own index range, so results are independent of worker count.
template <typename Fn>
void parallel_chunks(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    fn(std::size_t{0}, n);
    return;
  }
  std::size_t num_threads = std::min<std::size_t>(workers, n);
  std::size_t chunk = (n + num_threads - 1) / num_threads;
  std::vector<std::thread> pool;
  pool.reserve(num_threads);
  for (std::size_t t = 0; t < num_threads; ++t) {
    std::size_t begin = t * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace erkit::detail

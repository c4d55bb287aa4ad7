#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace conic {

// Runs fn(chunk_index, begin, end) over fixed-size chunks of [0, n).  Chunk
// boundaries depend only on n, so per-chunk partial results can be folded in
// chunk order afterwards and the final reduction is identical for any worker
// count.  Workers pull chunks from a shared counter.
template <typename Fn>
void for_each_chunk(std::int64_t n, int workers, Fn&& fn, std::int64_t chunk_size = 4096) {
  if (n <= 0) return;
  const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  if (workers <= 1 || n_chunks == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    }
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(std::min<std::int64_t>(workers, n_chunks));
  pool.reserve(spawn);
  for (int w = 0; w < spawn; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

inline std::int64_t chunk_count(std::int64_t n, std::int64_t chunk_size = 4096) {
  return n <= 0 ? 0 : (n + chunk_size - 1) / chunk_size;
}

}  // namespace conic

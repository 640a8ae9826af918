#include "rwalk/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rwalk {

int default_thread_count() {
  if (const char* env = std::getenv("REINFORCED_WALKS_THREADS")) {
    const int k = std::atoi(env);
    if (k >= 1) return k;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& chunk) {
  if (count <= 0) return;
  const int k = static_cast<int>(
      std::max<std::int64_t>(1, std::min<std::int64_t>(threads, count)));
  if (k == 1) {
    chunk(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(k);
  const std::int64_t step = (count + k - 1) / k;
  for (int t = 0; t < k; ++t) {
    const std::int64_t begin = t * step;
    const std::int64_t end = std::min(count, begin + step);
    if (begin >= end) break;
    pool.emplace_back([&chunk, begin, end] { chunk(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace rwalk

#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace mpidyn {

/// Runs fn(i) for i in [0, count) on up to `threads` workers with contiguous
/// index chunks. Callers must write disjoint outputs per index; reductions are
/// done by the caller in index order so results never depend on scheduling.
/// threads <= 0 picks the hardware count.
inline void parallel_for(int count, const std::function<void(int)>& fn, int threads = 0) {
  if (count <= 0) return;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, count);
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  const int chunk = (count + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const int begin = w * chunk;
    const int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (int i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mpidyn

#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace fuzzcyl {

// FUZZCYL_THREADS caps the worker count; unset means hardware concurrency
inline int thread_count() {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("FUZZCYL_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return std::min(n, hw);
    } catch (...) {
    }
  }
  return hw;
}

// fn(i) for i in [0, n); each index written by exactly one worker, so
// results stored per index come out in index order regardless of scheduling
template <class Fn>
void parallel_for(int n, Fn&& fn) {
  int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace fuzzcyl

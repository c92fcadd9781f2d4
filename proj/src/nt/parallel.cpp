#include "hmlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace hmlab::par {

int resolve_workers(int requested) {
  int hw = (int)std::thread::hardware_concurrency();
  if (hw <= 0) hw = 1;
  int cap = hw;
  if (const char* env = std::getenv("HMLAB_MAX_WORKERS")) {
    int c = std::atoi(env);
    if (c >= 1) cap = std::min(cap, c);
  }
  if (requested <= 0) return cap;
  return std::max(1, std::min(requested, cap));
}

void run_chunks(int64_t num_chunks, int workers, const std::function<void(int64_t)>& body) {
  if (num_chunks <= 0) return;
  workers = std::max<int>(1, (int)std::min<int64_t>(workers, num_chunks));
  if (workers == 1) {
    for (int64_t c = 0; c < num_chunks; ++c) body(c);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve((size_t)workers);
  std::exception_ptr first_error = nullptr;
  std::mutex err_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        int64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= num_chunks) break;
        try {
          body(c);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mutex);
          if (!first_error) first_error = std::current_exception();
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void parallel_ranges(int64_t begin, int64_t end, int64_t chunk_size, int workers,
                     const std::function<void(int64_t, int64_t, int64_t)>& body) {
  if (end <= begin) return;
  if (chunk_size < 1) chunk_size = 1;
  int64_t n = (end - begin + chunk_size - 1) / chunk_size;
  run_chunks(n, workers, [&](int64_t c) {
    int64_t lo = begin + c * chunk_size;
    int64_t hi = std::min(end, lo + chunk_size);
    body(lo, hi, c);
  });
}

}  // namespace hmlab::par

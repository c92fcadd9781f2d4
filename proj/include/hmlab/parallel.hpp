#pragma once
// Deterministic chunked parallelism. Work is split into a fixed set of chunks
// whose boundaries do not depend on the worker count; per-chunk results are
// combined in chunk order. Integer tallies are therefore exact and identical
// for any --workers value, and floating-point reductions are bit-stable too.

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace hmlab::par {

using std::int64_t;

// Worker count: explicit request clamped to [1, hardware], with an optional
// cap from the HMLAB_MAX_WORKERS environment variable. requested <= 0 means
// "pick a default".
int resolve_workers(int requested);

// Runs body(chunk_index) for chunk_index in [0, num_chunks) on `workers`
// threads. Chunks are claimed via an atomic counter; bodies must write only
// to their own chunk's slot.
void run_chunks(int64_t num_chunks, int workers, const std::function<void(int64_t)>& body);

// Splits [begin, end) into chunks of size chunk_size (fixed, worker-count
// independent) and calls body(chunk_begin, chunk_end, chunk_index).
void parallel_ranges(int64_t begin, int64_t end, int64_t chunk_size, int workers,
                     const std::function<void(int64_t, int64_t, int64_t)>& body);

// Map-reduce with deterministic combine order: result slots are filled per
// chunk and then folded left-to-right on the calling thread.
template <class T, class MapFn>
std::vector<T> map_chunks(int64_t num_chunks, int workers, MapFn map_fn) {
  std::vector<T> slots((size_t)num_chunks);
  run_chunks(num_chunks, workers, [&](int64_t c) { slots[(size_t)c] = map_fn(c); });
  return slots;
}

}  // namespace hmlab::par

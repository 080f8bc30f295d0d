#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace fracdeg {

/// Worker count taken from FRACDEG_WORKERS, falling back to the hardware
/// concurrency. Always at least 1.
int worker_count();

/// Reduces `body(begin, end)` over [0, count) split into fixed chunks.
///
/// Chunk boundaries depend only on `count` and `chunk`, and the partial
/// results are folded in chunk order, so the result is bitwise identical for
/// any number of workers.
template <typename T, typename Body>
T deterministic_reduce(std::size_t count, std::size_t chunk, T zero, Body&& body) {
  if (count == 0) return zero;
  if (chunk == 0) chunk = 1;
  const std::size_t chunks = (count + chunk - 1) / chunk;
  std::vector<T> partial(chunks, zero);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t begin = c * chunk;
      const std::size_t end = begin + chunk < count ? begin + chunk : count;
      partial[c] = body(begin, end);
    }
  };
  const auto workers = static_cast<std::size_t>(worker_count());
  if (workers <= 1 || chunks == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    const std::size_t spawn = workers < chunks ? workers : chunks;
    pool.reserve(spawn - 1);
    for (std::size_t w = 1; w < spawn; ++w) pool.emplace_back(work);
    work();
  }
  T total = zero;
  for (auto& p : partial) total += p;
  return total;
}

/// Runs `body(i)` for i in [0, count); results must be written to disjoint
/// slots owned by the caller.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  const auto workers = static_cast<std::size_t>(worker_count());
  if (workers <= 1 || count <= 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t spawn = workers < count ? workers : count;
  for (std::size_t w = 1; w < spawn; ++w) pool.emplace_back(work);
  work();
}

}  // namespace fracdeg

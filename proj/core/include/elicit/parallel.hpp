#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace elicit {

/// 0 means "one per hardware thread".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates probe(i) over [0, count) and returns the smallest index whose
/// probe yields a value, together with that value. Work is split into chunks
/// across threads; every index below the returned one is always examined, so
/// the answer is identical for any thread count.
template <class T, class Probe>
std::optional<std::pair<std::uint64_t, T>> first_hit(std::uint64_t count, unsigned threads,
                                                     Probe&& probe) {
  constexpr std::uint64_t kChunk = 64;
  threads = resolve_threads(threads);
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{count};
  std::optional<std::pair<std::uint64_t, T>> result;
  std::exception_ptr failure;
  std::mutex mu;

  auto worker = [&] {
    try {
      while (true) {
        const std::uint64_t start = next_chunk.fetch_add(kChunk);
        if (start >= count || start >= best.load()) return;
        const std::uint64_t end = std::min(count, start + kChunk);
        for (std::uint64_t i = start; i < end && i < best.load(); ++i) {
          std::optional<T> hit = probe(i);
          if (!hit) continue;
          std::lock_guard lock(mu);
          if (i < best.load()) {
            best.store(i);
            result.emplace(i, std::move(*hit));
          }
          break;
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };

  if (threads <= 1 || count <= kChunk) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

/// Runs body(i) for every i in [0, count). Bodies must only touch state
/// owned by their index; callers merge per-index results afterwards.
template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
  constexpr std::uint64_t kChunk = 16;
  threads = resolve_threads(threads);
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex mu;

  auto worker = [&] {
    try {
      while (!stop.load()) {
        const std::uint64_t start = next_chunk.fetch_add(kChunk);
        if (start >= count) return;
        const std::uint64_t end = std::min(count, start + kChunk);
        for (std::uint64_t i = start; i < end; ++i) body(i);
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      stop.store(true);
    }
  };

  if (threads <= 1 || count <= kChunk) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace elicit

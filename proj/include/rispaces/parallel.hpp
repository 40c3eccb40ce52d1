#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace rispaces {

/// Worker count: RISPACES_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
inline unsigned thread_cap() {
  if (const char* env = std::getenv("RISPACES_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = fn(i) for i in [0, n), evaluated on up to thread_cap() workers.
/// Results keep index order; the first exception thrown by fn is rethrown.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<Result> out(n);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            out[i] = fn(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace rispaces

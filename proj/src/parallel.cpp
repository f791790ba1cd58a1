#include "rngcal/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rngcal {

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RNGCAL_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) {
        n = std::min<unsigned>(n, static_cast<unsigned>(cap));
      }
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n;
}

std::uint64_t parallel_count(std::uint64_t trials, const std::function<bool(std::uint64_t)>& trial) {
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), trials));
  if (workers <= 1) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      hits += trial(t) ? 1 : 0;
    }
    return hits;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> hits{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          std::uint64_t local = 0;
          for (std::uint64_t t = next++; t < trials; t = next++) {
            local += trial(t) ? 1 : 0;
          }
          hits += local;
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          failure = std::current_exception();
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return hits;
}

}  // namespace rngcal

#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace vocemerge {

// Applies fn to every index in [0, count) and stores results in input order,
// so the merged output is independent of the worker count.
template <typename Result>
std::vector<Result> parallelMapOrdered(size_t count, int threads,
                                       const std::function<Result(size_t)>& fn) {
  std::vector<Result> results(count);
  if (count == 0) return results;
  if (threads <= 1 || count == 1) {
    for (size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  size_t workers = std::min<size_t>(static_cast<size_t>(threads), count);
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex errorMu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          results[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(errorMu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace vocemerge

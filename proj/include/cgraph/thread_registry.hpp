#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>

namespace cgraph {

using Tid = std::size_t;

inline constexpr std::size_t kDefaultMaxThreads = 128;

class CapacityExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hands out dense thread ids in [0, maxThreads). Ids are never recycled.
class ThreadRegistry {
 public:
  explicit ThreadRegistry(std::size_t maxThreads = kDefaultMaxThreads);

  Tid registerThread();

  std::size_t maxThreads() const noexcept { return maxThreads_; }
  // Number of ids handed out so far; every valid tid is below this.
  std::size_t registered() const noexcept { return nextSlot_.load(std::memory_order_acquire); }

 private:
  std::size_t maxThreads_;
  std::atomic<std::size_t> nextSlot_{0};
};

}  // namespace cgraph

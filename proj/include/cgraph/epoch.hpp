#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "cgraph/thread_registry.hpp"

namespace cgraph {

// Epoch-based reclamation for objects that are unlinked from a shared root and
// may still be read by threads that loaded the root earlier.
//
// A thread pins the current epoch for the duration of a Guard. An object
// retired while the global epoch is e is freed once the global epoch reaches
// e + 2, at which point no pinned thread can still hold it.
class EpochReclaimer {
 public:
  explicit EpochReclaimer(std::size_t maxThreads);
  ~EpochReclaimer();
  EpochReclaimer(const EpochReclaimer&) = delete;
  EpochReclaimer& operator=(const EpochReclaimer&) = delete;

  class Guard {
   public:
    Guard(EpochReclaimer& owner, Tid tid);
    ~Guard();
    Guard(const Guard&) = delete;
    Guard& operator=(const Guard&) = delete;

   private:
    EpochReclaimer& owner_;
    Tid tid_;
  };

  Guard pin(Tid tid) { return Guard(*this, tid); }

  template <typename T>
  void retire(Tid tid, T* object) {
    retireRaw(tid, object, [](void* p) { delete static_cast<T*>(p); });
  }

  void retireRaw(Tid tid, void* object, void (*deleter)(void*));

  // Frees everything still pending. Only valid when no thread is pinned.
  void drainAll();

  std::uint64_t epoch() const noexcept { return global_.load(std::memory_order_acquire); }
  std::size_t pending() const noexcept;

 private:
  struct Retired {
    void* object;
    void (*deleter)(void*);
    std::uint64_t epoch;
  };

  struct alignas(64) Slot {
    // (epoch << 1) | pinned
    std::atomic<std::uint64_t> announced{0};
    std::uint32_t depth = 0;  // owner-thread only
    std::vector<Retired> retired;
  };

  bool tryAdvance();
  void freeExpired(Slot& slot);

  std::atomic<std::uint64_t> global_{2};
  std::size_t maxThreads_;
  std::unique_ptr<Slot[]> slots_;
  std::atomic<std::size_t> highWater_{0};
};

}  // namespace cgraph

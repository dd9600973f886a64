#include <algorithm>
#include <string>

#include "cgraph/epoch.hpp"
#include "cgraph/thread_registry.hpp"

namespace cgraph {

ThreadRegistry::ThreadRegistry(std::size_t maxThreads) : maxThreads_(maxThreads) {
  if (maxThreads == 0) throw std::invalid_argument("maxThreads must be positive");
}

Tid ThreadRegistry::registerThread() {
  std::size_t slot = nextSlot_.load(std::memory_order_relaxed);
  do {
    if (slot >= maxThreads_) {
      throw CapacityExhausted("thread registry full (" + std::to_string(maxThreads_) + " slots)");
    }
  } while (!nextSlot_.compare_exchange_weak(slot, slot + 1, std::memory_order_acq_rel,
                                            std::memory_order_relaxed));
  return slot;
}

namespace {
constexpr std::uint64_t kPinned = 1;
constexpr std::size_t kAdvanceEvery = 32;
}  // namespace

EpochReclaimer::EpochReclaimer(std::size_t maxThreads)
    : maxThreads_(maxThreads), slots_(std::make_unique<Slot[]>(maxThreads)) {}

EpochReclaimer::~EpochReclaimer() { drainAll(); }

EpochReclaimer::Guard::Guard(EpochReclaimer& owner, Tid tid) : owner_(owner), tid_(tid) {
  Slot& slot = owner_.slots_[tid_];
  if (slot.depth++ > 0) return;
  std::size_t hw = owner_.highWater_.load(std::memory_order_relaxed);
  while (hw < tid_ + 1 &&
         !owner_.highWater_.compare_exchange_weak(hw, tid_ + 1, std::memory_order_acq_rel)) {
  }
  // Announce, then re-check: the announcement must be visible before any
  // shared pointer is read, and must not lag a concurrent advance.
  std::uint64_t e = owner_.global_.load(std::memory_order_acquire);
  for (;;) {
    slot.announced.store((e << 1) | kPinned, std::memory_order_seq_cst);
    const std::uint64_t again = owner_.global_.load(std::memory_order_seq_cst);
    if (again == e) break;
    e = again;
  }
}

EpochReclaimer::Guard::~Guard() {
  Slot& slot = owner_.slots_[tid_];
  if (--slot.depth > 0) return;
  slot.announced.store(slot.announced.load(std::memory_order_relaxed) & ~kPinned,
                       std::memory_order_release);
}

void EpochReclaimer::retireRaw(Tid tid, void* object, void (*deleter)(void*)) {
  Slot& slot = slots_[tid];
  slot.retired.push_back({object, deleter, global_.load(std::memory_order_acquire)});
  if (slot.retired.size() % kAdvanceEvery == 0) {
    tryAdvance();
    freeExpired(slot);
  }
}

bool EpochReclaimer::tryAdvance() {
  std::uint64_t e = global_.load(std::memory_order_seq_cst);
  const std::size_t n = std::min(highWater_.load(std::memory_order_acquire), maxThreads_);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t a = slots_[i].announced.load(std::memory_order_seq_cst);
    if ((a & kPinned) && (a >> 1) != e) return false;
  }
  return global_.compare_exchange_strong(e, e + 1, std::memory_order_acq_rel);
}

void EpochReclaimer::freeExpired(Slot& slot) {
  const std::uint64_t e = global_.load(std::memory_order_acquire);
  auto keep = std::partition(slot.retired.begin(), slot.retired.end(),
                             [e](const Retired& r) { return r.epoch + 2 > e; });
  for (auto it = keep; it != slot.retired.end(); ++it) it->deleter(it->object);
  slot.retired.erase(keep, slot.retired.end());
}

void EpochReclaimer::drainAll() {
  for (std::size_t i = 0; i < maxThreads_; ++i) {
    for (const Retired& r : slots_[i].retired) r.deleter(r.object);
    slots_[i].retired.clear();
  }
}

std::size_t EpochReclaimer::pending() const noexcept {
  std::size_t total = 0;
  for (std::size_t i = 0; i < maxThreads_; ++i) total += slots_[i].retired.size();
  return total;
}

}  // namespace cgraph

#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>

namespace cgraph {

// A reference plus one mark bit packed into a single word. The mark lives in
// the lowest address bit, so T must be at least 2-byte aligned.
template <typename T>
class TaggedRef {
  static_assert(alignof(T) >= 2, "mark bit needs a free low address bit");

 public:
  constexpr TaggedRef() noexcept = default;
  explicit TaggedRef(T* target, bool mark = false) noexcept
      : word_(reinterpret_cast<std::uintptr_t>(target) | (mark ? 1u : 0u)) {
    assert((reinterpret_cast<std::uintptr_t>(target) & 1u) == 0);
  }

  T* target() const noexcept { return reinterpret_cast<T*>(word_ & ~std::uintptr_t{1}); }
  bool mark() const noexcept { return (word_ & 1u) != 0; }
  std::uintptr_t word() const noexcept { return word_; }

  static TaggedRef fromWord(std::uintptr_t w) noexcept {
    TaggedRef r;
    r.word_ = w;
    return r;
  }

  friend bool operator==(TaggedRef a, TaggedRef b) noexcept { return a.word_ == b.word_; }

 private:
  std::uintptr_t word_ = 0;
};

template <typename T>
TaggedRef<T> markTag(TaggedRef<T> r) noexcept {
  return TaggedRef<T>(r.target(), true);
}

template <typename T>
TaggedRef<T> clearTag(TaggedRef<T> r) noexcept {
  return TaggedRef<T>(r.target(), false);
}

template <typename T>
bool isTagged(TaggedRef<T> r) noexcept {
  return r.mark();
}

// Shared cell holding a TaggedRef. Loads and CAS move the (target, mark) pair
// as one word.
template <typename T>
class AtomicTaggedRef {
 public:
  AtomicTaggedRef() noexcept = default;
  explicit AtomicTaggedRef(TaggedRef<T> init) noexcept : word_(init.word()) {}
  AtomicTaggedRef(const AtomicTaggedRef&) = delete;
  AtomicTaggedRef& operator=(const AtomicTaggedRef&) = delete;

  TaggedRef<T> load(std::memory_order order = std::memory_order_seq_cst) const noexcept {
    return TaggedRef<T>::fromWord(word_.load(order));
  }

  void store(TaggedRef<T> value, std::memory_order order = std::memory_order_seq_cst) noexcept {
    word_.store(value.word(), order);
  }

  // On failure `expected` is refreshed with the current value.
  bool compareExchange(TaggedRef<T>& expected, TaggedRef<T> desired) noexcept {
    std::uintptr_t w = expected.word();
    const bool ok = word_.compare_exchange_strong(w, desired.word());
    if (!ok) expected = TaggedRef<T>::fromWord(w);
    return ok;
  }

  bool compareExchange(TaggedRef<T>&& expected, TaggedRef<T> desired) noexcept {
    TaggedRef<T> e = expected;
    return compareExchange(e, desired);
  }

 private:
  std::atomic<std::uintptr_t> word_{0};
};

}  // namespace cgraph

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>
#include <vector>

#include "cgraph/epoch.hpp"
#include "cgraph/tagged_ref.hpp"
#include "cgraph/thread_registry.hpp"

using namespace cgraph;

namespace {

struct alignas(8) Cell {
  int value = 0;
};

}  // namespace

TEST(TaggedRef, MarkTagSetsBitKeepsTarget) {
  Cell n;
  TaggedRef<Cell> r(&n);
  EXPECT_EQ(markTag(r), TaggedRef<Cell>(&n, true));
  EXPECT_EQ(markTag(markTag(r)), TaggedRef<Cell>(&n, true));
  TaggedRef<Cell> nil;
  EXPECT_EQ(markTag(nil).target(), nullptr);
  EXPECT_TRUE(markTag(nil).mark());
}

TEST(TaggedRef, ClearTagInvertsMark) {
  Cell n;
  TaggedRef<Cell> marked(&n, true);
  EXPECT_EQ(clearTag(marked), TaggedRef<Cell>(&n));
  EXPECT_EQ(clearTag(TaggedRef<Cell>(&n)), TaggedRef<Cell>(&n));
  EXPECT_EQ(clearTag(markTag(TaggedRef<Cell>(&n))), TaggedRef<Cell>(&n));
}

TEST(TaggedRef, IsTagged) {
  Cell n;
  EXPECT_TRUE(isTagged(TaggedRef<Cell>(&n, true)));
  EXPECT_FALSE(isTagged(TaggedRef<Cell>(&n)));
  EXPECT_TRUE(isTagged(markTag(clearTag(TaggedRef<Cell>(&n, true)))));
}

TEST(TaggedRef, TagAlgebraHoldsForManyTargets) {
  std::vector<Cell> cells(64);
  for (auto& c : cells) {
    for (bool m : {false, true}) {
      TaggedRef<Cell> r(&c, m);
      EXPECT_EQ(clearTag(markTag(r)), clearTag(r));
      EXPECT_TRUE(isTagged(markTag(r)));
      EXPECT_FALSE(isTagged(clearTag(r)));
      EXPECT_EQ(markTag(r).target(), &c);
    }
  }
}

TEST(AtomicTaggedRef, FailedCasRefreshesExpected) {
  Cell a, b;
  AtomicTaggedRef<Cell> cell{TaggedRef<Cell>(&a)};
  TaggedRef<Cell> expected(&b);
  EXPECT_FALSE(cell.compareExchange(expected, TaggedRef<Cell>(&b, true)));
  EXPECT_EQ(expected, TaggedRef<Cell>(&a));
  EXPECT_TRUE(cell.compareExchange(expected, TaggedRef<Cell>(&a, true)));
  EXPECT_EQ(cell.load(), TaggedRef<Cell>(&a, true));
}

// Every read must be a value some thread wrote, and the successful CAS count
// must equal the number of transitions observed.
TEST(AtomicTaggedRef, ConcurrentCasNeverTears) {
  constexpr int kThreads = 4;
  constexpr int kAttempts = 20000;
  std::vector<Cell> cells(8);
  AtomicTaggedRef<Cell> cell{TaggedRef<Cell>(&cells[0])};
  std::atomic<int> successes{0};
  std::atomic<bool> torn{false};
  auto valid = [&](TaggedRef<Cell> r) {
    const Cell* t = r.target();
    return t >= cells.data() && t < cells.data() + cells.size();
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < kAttempts; ++i) {
        TaggedRef<Cell> seen = cell.load();
        if (!valid(seen)) torn = true;
        TaggedRef<Cell> next(&cells[(i + t) % cells.size()], (i & 1) != 0);
        if (cell.compareExchange(seen, next)) {
          ++successes;
        } else if (!valid(seen)) {
          torn = true;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_FALSE(torn.load());
  EXPECT_GT(successes.load(), 0);
  EXPECT_TRUE(valid(cell.load()));
}

TEST(AtomicTaggedRef, CasCountsAddUp) {
  // Each successful CAS bumps a counter encoded in the target index; the
  // final index must equal the number of successes.
  constexpr int kThreads = 4;
  constexpr int kPerThread = 5000;
  std::vector<Cell> cells(kThreads * kPerThread + 1);
  AtomicTaggedRef<Cell> cell{TaggedRef<Cell>(&cells[0])};
  std::atomic<int> successes{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&] {
      int mine = 0;
      while (mine < kPerThread) {
        TaggedRef<Cell> seen = cell.load();
        const auto idx = seen.target() - cells.data();
        if (cell.compareExchange(seen, TaggedRef<Cell>(&cells[idx + 1], !seen.mark()))) {
          ++mine;
          ++successes;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  const auto final = cell.load();
  EXPECT_EQ(final.target() - cells.data(), successes.load());
  EXPECT_EQ(final.mark(), (successes.load() % 2) == 1);
}

TEST(ThreadRegistry, HandsOutDenseIds) {
  ThreadRegistry reg(3);
  EXPECT_EQ(reg.registerThread(), 0u);
  EXPECT_EQ(reg.registerThread(), 1u);
  EXPECT_EQ(reg.registerThread(), 2u);
  EXPECT_THROW(reg.registerThread(), CapacityExhausted);
  EXPECT_THROW(reg.registerThread(), CapacityExhausted);
  EXPECT_EQ(reg.registered(), 3u);
}

TEST(ThreadRegistry, ConcurrentBurstGivesDistinctIds) {
  constexpr std::size_t kCap = 64;
  ThreadRegistry reg(kCap);
  std::vector<std::vector<Tid>> got(8);
  std::atomic<int> rejected{0};
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < got.size(); ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 12; ++i) {
        try {
          got[t].push_back(reg.registerThread());
        } catch (const CapacityExhausted&) {
          ++rejected;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  std::set<Tid> all;
  std::size_t total = 0;
  for (const auto& v : got) {
    total += v.size();
    all.insert(v.begin(), v.end());
  }
  EXPECT_EQ(total, kCap);
  EXPECT_EQ(all.size(), kCap);
  EXPECT_EQ(*all.rbegin(), kCap - 1);
  EXPECT_EQ(rejected.load(), 8 * 12 - static_cast<int>(kCap));
}

namespace {
struct Counted {
  static inline std::atomic<int> live{0};
  Counted() { ++live; }
  ~Counted() { --live; }
};
}  // namespace

TEST(EpochReclaimer, PinnedReaderDelaysFree) {
  Counted::live = 0;
  EpochReclaimer ebr(2);
  {
    auto reader = ebr.pin(1);
    for (int i = 0; i < 200; ++i) {
      auto g = ebr.pin(0);
      ebr.retire(0, new Counted);
    }
    // Thread 1 pinned an early epoch, so nothing retired after it can go.
    EXPECT_EQ(Counted::live.load(), 200);
  }
  for (int i = 0; i < 200; ++i) {
    auto g = ebr.pin(0);
    ebr.retire(0, new Counted);
  }
  EXPECT_LT(Counted::live.load(), 400);
  ebr.drainAll();
  EXPECT_EQ(Counted::live.load(), 0);
  EXPECT_EQ(ebr.pending(), 0u);
}

TEST(EpochReclaimer, DestructorFreesPending) {
  Counted::live = 0;
  {
    EpochReclaimer ebr(1);
    auto g = ebr.pin(0);
    ebr.retire(0, new Counted);
  }
  EXPECT_EQ(Counted::live.load(), 0);
}

TEST(EpochReclaimer, ConcurrentRetireIsSafe) {
  Counted::live = 0;
  {
    EpochReclaimer ebr(4);
    std::vector<std::thread> threads;
    for (Tid t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        for (int i = 0; i < 5000; ++i) {
          auto g = ebr.pin(t);
          ebr.retire(t, new Counted);
        }
      });
    }
    for (auto& th : threads) th.join();
  }
  EXPECT_EQ(Counted::live.load(), 0);
}

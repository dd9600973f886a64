#include "cgraph/harness/checker.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace cgraph::harness {

namespace {

constexpr std::uint64_t kPending = std::numeric_limits<std::uint64_t>::max();

struct Operation {
  Op op;
  std::optional<OpValue> value;
  std::uint64_t invoke = 0;
  std::uint64_t response = kPending;
};

struct BudgetExhausted {};

class Search {
 public:
  Search(std::vector<std::vector<Operation>> threads, std::size_t budget)
      : threads_(std::move(threads)), progress_(threads_.size(), 0), budget_(budget) {
    for (const auto& ops : threads_) {
      std::size_t complete = ops.size();
      if (!ops.empty() && ops.back().response == kPending) --complete;
      required_.push_back(complete);
    }
  }

  bool run() { return dfs(SeqGraphModel{}); }
  std::size_t explored() const noexcept { return explored_; }

 private:
  bool finished() const {
    for (std::size_t t = 0; t < threads_.size(); ++t) {
      if (progress_[t] < required_[t]) return false;
    }
    return true;
  }

  std::string memoKey(const SeqGraphModel& model) const {
    std::string key(progress_.size() * sizeof(std::uint32_t), '\0');
    for (std::size_t t = 0; t < progress_.size(); ++t) {
      auto p = static_cast<std::uint32_t>(progress_[t]);
      std::memcpy(key.data() + t * sizeof p, &p, sizeof p);
    }
    model.encode(key);
    return key;
  }

  bool dfs(const SeqGraphModel& model) {
    if (finished()) return true;
    if (!seen_.insert(memoKey(model)).second) return false;
    if (++explored_ > budget_) throw BudgetExhausted{};

    // An operation may go next only if it was invoked before every other
    // unlinearized operation responded.
    std::uint64_t minResponse = kPending;
    for (std::size_t t = 0; t < threads_.size(); ++t) {
      if (progress_[t] < threads_[t].size()) {
        minResponse = std::min(minResponse, threads_[t][progress_[t]].response);
      }
    }
    for (std::size_t t = 0; t < threads_.size(); ++t) {
      if (progress_[t] >= threads_[t].size()) continue;
      const Operation& o = threads_[t][progress_[t]];
      if (o.invoke > minResponse) continue;
      SeqGraphModel next = model;
      OpValue v;
      try {
        v = next.apply(o.op);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (o.value && !sameValue(*o.value, v)) continue;
      ++progress_[t];
      const bool ok = dfs(next);
      --progress_[t];
      if (ok) return true;
    }
    return false;
  }

  std::vector<std::vector<Operation>> threads_;
  std::vector<std::size_t> required_;
  std::vector<std::size_t> progress_;
  std::unordered_set<std::string> seen_;
  std::size_t explored_ = 0;
  std::size_t budget_;
};

std::vector<std::vector<Operation>> pairUp(const std::vector<HistoryEvent>& history,
                                           std::size_t count) {
  std::map<Tid, std::vector<Operation>> byThread;
  for (std::size_t i = 0; i < count; ++i) {
    const HistoryEvent& e = history[i];
    auto& ops = byThread[e.tid];
    const bool open = !ops.empty() && ops.back().response == kPending;
    if (e.kind == EventKind::Invoke) {
      if (open) {
        throw std::invalid_argument("thread " + std::to_string(e.tid) +
                                    " invokes while an operation is pending");
      }
      ops.push_back(Operation{e.op, std::nullopt, e.ts, kPending});
    } else {
      if (!open || ops.back().op.kind != e.op.kind) {
        throw std::invalid_argument("thread " + std::to_string(e.tid) +
                                    " has a response without a matching invocation");
      }
      if (!e.value) throw std::invalid_argument("response without a value");
      ops.back().response = e.ts;
      ops.back().value = e.value;
    }
  }
  std::vector<std::vector<Operation>> out;
  for (auto& [tid, ops] : byThread) out.push_back(std::move(ops));
  return out;
}

// Returns nullopt when the budget ran out.
std::optional<bool> linearizable(const std::vector<HistoryEvent>& history, std::size_t count,
                                 std::size_t budget, std::size_t& explored) {
  Search search(pairUp(history, count), budget);
  try {
    const bool ok = search.run();
    explored += search.explored();
    return ok;
  } catch (const BudgetExhausted&) {
    explored += search.explored();
    return std::nullopt;
  }
}

}  // namespace

std::string_view toString(Verdict v) noexcept {
  switch (v) {
    case Verdict::Linearizable:
      return "linearizable";
    case Verdict::NotLinearizable:
      return "not linearizable";
    case Verdict::BudgetExceeded:
      return "budget exceeded";
  }
  return "?";
}

CheckResult checkLinearizable(const std::vector<HistoryEvent>& history,
                              const CheckOptions& options) {
  std::vector<HistoryEvent> sorted = history;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const HistoryEvent& a, const HistoryEvent& b) { return a.ts < b.ts; });

  CheckResult result;
  auto full = linearizable(sorted, sorted.size(), options.nodeBudget, result.explored);
  if (!full) {
    result.verdict = Verdict::BudgetExceeded;
    result.detail = "search budget of " + std::to_string(options.nodeBudget) + " nodes exhausted";
    return result;
  }
  if (*full) return result;

  result.verdict = Verdict::NotLinearizable;
  std::size_t shortest = sorted.size();
  if (options.minimize) {
    // Prefixes of a linearizable history stay linearizable, so the failing
    // prefixes form a suffix of lengths and can be bisected.
    std::size_t lo = 1, hi = sorted.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      auto ok = linearizable(sorted, mid, options.nodeBudget, result.explored);
      if (!ok) break;
      if (*ok) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    shortest = hi;
  }
  result.counterexample.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(shortest));
  const HistoryEvent& last = result.counterexample.back();
  result.detail = "no valid linearization once event ts=" + std::to_string(last.ts) + " (tid " +
                  std::to_string(last.tid) + ", " + std::string(toString(last.op.kind)) +
                  ") is included";
  return result;
}

}  // namespace cgraph::harness

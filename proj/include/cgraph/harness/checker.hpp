#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cgraph/harness/history.hpp"

namespace cgraph::harness {

enum class Verdict { Linearizable, NotLinearizable, BudgetExceeded };

std::string_view toString(Verdict v) noexcept;

struct CheckOptions {
  // Upper bound on search nodes per check; exceeding it yields BudgetExceeded.
  std::size_t nodeBudget = 20'000'000;
  // Shrink a failing history to its shortest non-linearizable prefix.
  bool minimize = true;
};

struct CheckResult {
  Verdict verdict = Verdict::Linearizable;
  std::size_t explored = 0;
  // On failure: the shortest prefix of the history (by timestamp) that is
  // already not linearizable.
  std::vector<HistoryEvent> counterexample;
  std::string detail;

  bool ok() const noexcept { return verdict == Verdict::Linearizable; }
};

// Searches for a total order of the operations that respects real-time order
// and replays on SeqGraphModel with identical return values. The initial
// graph is empty. Operations still pending at the end of the history may take
// effect or not. Throws std::invalid_argument when a thread's events do not
// alternate invoke/response for the same operation.
CheckResult checkLinearizable(const std::vector<HistoryEvent>& history,
                              const CheckOptions& options = {});

}  // namespace cgraph::harness

#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgraph/graph.hpp"
#include "cgraph/harness/model.hpp"
#include "cgraph/stall.hpp"

namespace cgraph::harness {

enum class ReleaseMode {
  // Victim resumes as soon as every helper has acquired a collector, so it
  // races with the helpers for the rest of the snapshot.
  AfterHelpersStart,
  // Victim stays parked until the helpers are done or the budget expires.
  AfterHelpersFinish,
};

struct StallPlan {
  // No site: the victim runs unhindered alongside the helpers.
  std::optional<StallSite> site = StallSite::AfterAcquire;
  // For the claim sites: park only on this vertex key. Any key otherwise.
  std::optional<Key> key;
  ReleaseMode release = ReleaseMode::AfterHelpersFinish;
};

struct StallScenario {
  std::vector<Key> vertices;
  std::vector<std::pair<Key, Key>> edges;
  std::size_t helpers = 1;
  SnapshotEngine engine = SnapshotEngine::Cooperative;
  // Point operations run by one extra thread while the victim is parked.
  std::vector<Op> concurrentOps;
  std::chrono::milliseconds budget{10'000};
};

struct StallReport {
  bool passed = false;
  bool victimParked = false;     // the victim actually hit the stall site
  bool helpersFinished = false;  // every helper returned within the budget
  bool snapshotsAgree = false;   // all snapshots equal (only required when no updates ran)
  bool linearizable = false;     // joint history accepted by the checker
  std::chrono::nanoseconds slowestHelper{0};
  std::string phase;             // last phase the orchestration reached
  std::string detail;
};

// Parks one snapshot thread (the victim) at plan.site and checks that the
// helpers still complete their snapshots, then releases the victim and checks
// all results for consistency.
StallReport runStallTest(const StallPlan& plan, const StallScenario& scenario);

}  // namespace cgraph::harness

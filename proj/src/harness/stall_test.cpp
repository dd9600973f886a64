#include "cgraph/harness/stall_test.hpp"

#include <algorithm>
#include <condition_variable>
#include <future>
#include <mutex>
#include <thread>

#include "cgraph/harness/checker.hpp"
#include "cgraph/harness/history.hpp"

namespace cgraph::harness {

namespace {

using Clock = std::chrono::steady_clock;

class Orchestrator final : public SnapshotHooks {
 public:
  Orchestrator(const StallPlan& plan, Tid victim, std::size_t helpers)
      : plan_(plan), victim_(victim), helpers_(helpers),
        joinFirst_(plan.site == StallSite::ReconstructionClaim) {}

  void reached(StallSite site, Tid tid, Key key) override {
    std::unique_lock lock(m_);
    if (tid == victim_) {
      if (site == StallSite::AfterAcquire) {
        victimAcquired_ = true;
        cv_.notify_all();
      }
      // For the reconstruction site the helpers must share the victim's
      // collector, so the victim waits for them to join before going on.
      if (joinFirst_ && site == StallSite::AfterAcquire) {
        cv_.wait(lock, [&] { return helpersAcquired_ == helpers_ || released_; });
      }
      if (!parked_ && site == plan_.site && (!plan_.key || *plan_.key == key)) {
        parked_ = true;
        cv_.notify_all();
        cv_.wait(lock, [&] { return released_; });
      }
      return;
    }
    if (!isHelper(tid)) return;
    if (site == StallSite::AfterAcquire) {
      ++helpersAcquired_;
      cv_.notify_all();
    }
    if (joinFirst_ && site == StallSite::BeforeReconstruction) {
      cv_.wait(lock, [&] { return parked_ || victimDone_ || released_; });
    }
  }

  void setHelpers(Tid first) {
    std::lock_guard lock(m_);
    firstHelper_ = first;
  }

  bool waitParked(Clock::time_point deadline) {
    std::unique_lock lock(m_);
    cv_.wait_until(lock, deadline, [&] { return parked_ || victimDone_; });
    return parked_;
  }

  void waitVictimAcquired(Clock::time_point deadline) {
    std::unique_lock lock(m_);
    cv_.wait_until(lock, deadline, [&] { return victimAcquired_ || victimDone_; });
  }

  void waitHelpersAcquired(Clock::time_point deadline) {
    std::unique_lock lock(m_);
    cv_.wait_until(lock, deadline, [&] { return helpersAcquired_ == helpers_; });
  }

  void victimDone() {
    std::lock_guard lock(m_);
    victimDone_ = true;
    cv_.notify_all();
  }

  void release() {
    std::lock_guard lock(m_);
    released_ = true;
    cv_.notify_all();
  }

  bool parked() {
    std::lock_guard lock(m_);
    return parked_;
  }

 private:
  bool isHelper(Tid tid) const { return tid >= firstHelper_ && tid < firstHelper_ + helpers_; }

  StallPlan plan_;
  Tid victim_;
  std::size_t helpers_;
  bool joinFirst_;
  Tid firstHelper_ = 0;
  std::mutex m_;
  std::condition_variable cv_;
  bool victimAcquired_ = false;
  bool parked_ = false;
  bool victimDone_ = false;
  bool released_ = false;
  std::size_t helpersAcquired_ = 0;
};

}  // namespace

StallReport runStallTest(const StallPlan& plan, const StallScenario& scenario) {
  StallReport report;
  const std::size_t helpers = scenario.helpers;
  const bool hasUpdater = !scenario.concurrentOps.empty();
  Graph graph(helpers + 3, scenario.engine);
  HistoryRecorder recorder(helpers + 3);

  const Tid loader = graph.registerThread();
  report.phase = "populate";
  for (Key k : scenario.vertices) recordOp(recorder, graph, {OpKind::AddVertex, k, 0}, loader);
  for (auto [u, v] : scenario.edges) recordOp(recorder, graph, {OpKind::AddEdge, u, v}, loader);

  const Tid victim = graph.registerThread();
  const Tid firstHelper = graph.registerThread();
  for (std::size_t i = 1; i < helpers; ++i) graph.registerThread();
  const Tid updater = graph.registerThread();

  Orchestrator orch(plan, victim, helpers);
  orch.setHelpers(firstHelper);
  graph.setHooks(&orch);

  const auto deadline = Clock::now() + scenario.budget;
  const Op snapOp{OpKind::Snap, 0, 0};

  auto victimRun = std::async(std::launch::async, [&] {
    auto s = std::get<SnapshotResult>(recordOp(recorder, graph, snapOp, victim));
    orch.victimDone();
    return s;
  });

  auto startHelpers = [&] {
    std::vector<std::future<std::pair<SnapshotResult, std::chrono::nanoseconds>>> out;
    for (std::size_t i = 0; i < helpers; ++i) {
      out.push_back(std::async(std::launch::async, [&, tid = firstHelper + i] {
        const auto t0 = Clock::now();
        auto s = std::get<SnapshotResult>(recordOp(recorder, graph, snapOp, tid));
        return std::make_pair(std::move(s), std::chrono::nanoseconds(Clock::now() - t0));
      }));
    }
    return out;
  };

  std::vector<std::future<std::pair<SnapshotResult, std::chrono::nanoseconds>>> helperRuns;
  report.phase = "park victim";
  if (plan.site == StallSite::ReconstructionClaim) {
    orch.waitVictimAcquired(deadline);
    helperRuns = startHelpers();
    report.victimParked = orch.waitParked(deadline);
  } else {
    report.victimParked = orch.waitParked(deadline);
    helperRuns = startHelpers();
  }

  std::future<void> updaterRun;
  if (hasUpdater) {
    updaterRun = std::async(std::launch::async, [&] {
      for (const Op& op : scenario.concurrentOps) recordOp(recorder, graph, op, updater);
    });
  }

  report.phase = "helpers";
  if (plan.release == ReleaseMode::AfterHelpersStart) {
    orch.waitHelpersAcquired(deadline);
    orch.release();
  }

  report.helpersFinished = true;
  for (auto& f : helperRuns) {
    if (f.wait_until(deadline) != std::future_status::ready) report.helpersFinished = false;
  }
  // The victim must still be parked for the stall to have meant anything.
  if (plan.release == ReleaseMode::AfterHelpersFinish && report.victimParked &&
      !orch.parked()) {
    report.detail = "victim left the stall site early";
  }

  report.phase = "release victim";
  orch.release();

  std::vector<SnapshotResult> snapshots;
  for (auto& f : helperRuns) {
    auto [s, elapsed] = f.get();
    report.slowestHelper = std::max(report.slowestHelper, elapsed);
    snapshots.push_back(std::move(s));
  }
  snapshots.push_back(victimRun.get());
  if (updaterRun.valid()) updaterRun.get();
  graph.setHooks(nullptr);

  report.phase = "verify";
  const SnapshotResult finalState = graph.readQuiescent();
  report.snapshotsAgree = true;
  for (const auto& s : snapshots) {
    if (s != snapshots.front() || (!hasUpdater && s != finalState)) report.snapshotsAgree = false;
  }
  CheckResult check = checkLinearizable(recorder.events());
  report.linearizable = check.ok();
  if (!report.linearizable && report.detail.empty()) report.detail = check.detail;

  // With concurrent updates, snapshots from different collectors may
  // legitimately differ; linearizability covers them instead.
  const bool agreementRequired = !hasUpdater;
  const bool claimSite =
      plan.site == StallSite::IteratorClaim || plan.site == StallSite::ReconstructionClaim;
  if (plan.site && !report.victimParked && (!claimSite || !scenario.vertices.empty()) &&
      report.detail.empty()) {
    report.detail = "victim never reached " + std::string(toString(*plan.site));
  }
  report.passed = report.helpersFinished && report.linearizable &&
                  (report.snapshotsAgree || !agreementRequired) && report.detail.empty();
  if (!report.helpersFinished && report.detail.empty()) {
    report.detail = "helpers did not finish within " +
                    std::to_string(scenario.budget.count()) + " ms";
  }
  report.phase = "done";
  return report;
}

}  // namespace cgraph::harness

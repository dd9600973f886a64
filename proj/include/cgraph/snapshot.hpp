#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cgraph/nodes.hpp"
#include "cgraph/stall.hpp"
#include "cgraph/thread_registry.hpp"
#include "cgraph/types.hpp"

namespace cgraph {

enum class WorkStatus : std::uint8_t { Idle, Active, Done };

// Reports form per-thread stacks, newest first. The key fields are copied at
// report time so reconstruction never has to chase graph nodes.
struct alignas(8) VReport {
  const VNode* vnode;
  Key key;
  ReportAction action;
  VReport* nextReport;
};

struct alignas(8) EReport {
  const ENode* enode;
  const VNode* source;
  const VNode* destination;
  Key sourceKey;
  Key destKey;
  ReportAction action;
  EReport* nextReport;
};

struct alignas(8) SnapEnode {
  SnapEnode(const ENode* e, Key dest, const VNode* destination) noexcept
      : enode(e), l(dest), ptv(destination) {}

  const ENode* enode;
  Key l;
  const VNode* ptv;
  // mark = chain closed for further appends
  AtomicTaggedRef<SnapEnode> enext;
};

struct alignas(8) SnapVnode {
  SnapVnode(const VNode* v, Key key) noexcept : vnode(v), k(key), headEnode(nullptr, kNegInfKey, nullptr) {}
  ~SnapVnode();

  const VNode* vnode;
  Key k;
  AtomicTaggedRef<SnapVnode> vnext;
  SnapEnode headEnode;  // sentinel; collected edges hang off headEnode.enext
  std::atomic<WorkStatus> edgeStatus{WorkStatus::Idle};
  std::atomic<WorkStatus> iterEdgeStatus{WorkStatus::Idle};
  // Reconstructed destination keys, published once.
  std::atomic<const std::vector<Key>*> edges{nullptr};
};

// Report views after merging all thread slots, ordered by (key, identity).
struct VReportRecord {
  const VNode* vnode;
  Key key;
  ReportAction action;
};

struct EReportRecord {
  const ENode* enode;
  const VNode* source;
  const VNode* destination;
  Key sourceKey;
  Key destKey;
  ReportAction action;
};

// Shared state through which every concurrent snapshot caller cooperates.
// All mutation is single-word CAS; every phase can be repeated or helped by
// any number of threads.
class SnapCollector {
 public:
  explicit SnapCollector(std::size_t maxThreads);
  ~SnapCollector();
  SnapCollector(const SnapCollector&) = delete;
  SnapCollector& operator=(const SnapCollector&) = delete;

  bool isActive() const noexcept { return active_.load(std::memory_order_acquire); }
  void deactivate() noexcept { active_.store(false, std::memory_order_release); }
  bool reconstructDone() const noexcept { return reconstructDone_.load(std::memory_order_acquire); }

  // One push onto the tid's report stack. Returns false if the slot is
  // blocked; the report is then dropped.
  bool pushVertexReport(Tid tid, const VNode* victim, ReportAction action);
  bool pushEdgeReport(Tid tid, const ENode* victim, const VNode* source, ReportAction action);

  // Walks the vertex list starting after `head` and appends every unmarked
  // vertex to the collected chain, then closes the chain.
  void collectVnode(const VNode* head);
  void collectEnode(SnapVnode& sv);
  void blockFurtherEnodes(SnapVnode& sv);

  // Vertex collection followed by the two edge passes.
  void iterator(const VNode* graphHead, SnapshotHooks* hooks, Tid tid);

  void blockFurtherReports();

  const std::vector<VReportRecord>& readVreports();
  const std::vector<EReportRecord>& readEreports();

  std::vector<const SnapVnode*> readCollectedVnodes() const;
  std::vector<const SnapEnode*> readCollectedEnodes(const SnapVnode& sv) const;

  // Builds the snapshot from the collected chains and the blocked report
  // lists. Returns the single published result.
  const SnapshotResult& reconstructionUsingReports(SnapshotHooks* hooks, Tid tid);

  const SnapshotResult* result() const noexcept { return result_.load(std::memory_order_acquire); }

  // Test access to the raw report slots.
  TaggedRef<VReport> vertexSlot(Tid tid) const { return vReports_[tid].load(); }
  TaggedRef<EReport> edgeSlot(Tid tid) const { return eReports_[tid].load(); }
  std::size_t maxThreads() const noexcept { return maxThreads_; }
  const SnapVnode& headVnode() const noexcept { return head_; }

 private:
  struct Plan;

  const Plan& plan();
  std::vector<Key> edgesFor(const Plan& plan, const VNode* source, const SnapVnode* collected) const;
  void reconstructVertex(const Plan& plan, SnapVnode& sv);
  const SnapshotResult& publishResult(const Plan& plan);

  std::size_t maxThreads_;
  std::atomic<bool> active_{true};
  std::atomic<bool> reconstructDone_{false};
  std::unique_ptr<AtomicTaggedRef<VReport>[]> vReports_;
  std::unique_ptr<AtomicTaggedRef<EReport>[]> eReports_;
  SnapVnode head_{nullptr, kNegInfKey};
  std::atomic<const std::vector<VReportRecord>*> mergedVreports_{nullptr};
  std::atomic<const std::vector<EReportRecord>*> mergedEreports_{nullptr};
  std::atomic<const Plan*> plan_{nullptr};
  std::atomic<const SnapshotResult*> result_{nullptr};
};

}  // namespace cgraph

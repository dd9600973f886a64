#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "cgraph/epoch.hpp"
#include "cgraph/nodes.hpp"
#include "cgraph/snapshot.hpp"
#include "cgraph/stall.hpp"
#include "cgraph/thread_registry.hpp"
#include "cgraph/types.hpp"

namespace cgraph {

// How concurrent takeSnapshot callers relate to each other.
enum class SnapshotEngine : std::uint8_t {
  // All callers share the collector published in the graph and help each
  // other finish it.
  Cooperative,
  // Every caller builds a private collector nobody else helps. Point
  // operations report to each active private collector.
  Independent,
};

struct EndpointPair {
  VNode* u = nullptr;
  VNode* v = nullptr;
  bool found = false;
};

// Unbounded directed graph: a sorted lock-free vertex list, each vertex owning
// a sorted lock-free list of outgoing edges. Point operations are lock-free;
// takeSnapshot is wait-free under the cooperative engine.
//
// Every operation takes the caller's tid from registerThread(). A tid must be
// used by one thread at a time.
class Graph {
 public:
  explicit Graph(std::size_t maxThreads = kDefaultMaxThreads,
                 SnapshotEngine engine = SnapshotEngine::Cooperative);
  ~Graph();
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Tid registerThread() { return registry_.registerThread(); }
  std::size_t maxThreads() const noexcept { return registry_.maxThreads(); }
  SnapshotEngine engine() const noexcept { return engine_; }

  OpResult addVertex(Key k, Tid tid);
  OpResult removeVertex(Key k, Tid tid);
  OpResult containsVertex(Key k, Tid tid);
  OpResult addEdge(Key k, Key l, Tid tid);
  OpResult removeEdge(Key k, Key l, Tid tid);
  OpResult containsEdge(Key k, Key l, Tid tid);

  SnapshotResult takeSnapshot(Tid tid);

  // Locate routines. Callers other than the graph itself should only use
  // these single-threaded (tests).
  std::pair<VNode*, VNode*> locV(VNode* start, Key k, Tid tid);
  std::pair<ENode*, ENode*> locE(VNode* source, Key l, Tid tid);
  std::pair<VNode*, VNode*> locC(VNode* start, Key k) const;
  EndpointPair conVPlus(Key k, Key l, Tid tid);
  EndpointPair conCPlus(Key k, Key l) const;

  // Report forwarding to whichever collectors are currently active.
  void reportVertex(const VNode* victim, ReportAction action, Tid tid);
  void reportEdge(const ENode* victim, ReportAction action, Tid tid, const VNode* source);

  // Returns the active shared collector, installing a fresh one if needed.
  SnapCollector* acquireSnapCollector(Tid tid);
  SnapCollector* currentCollector() const noexcept { return psc_.load(std::memory_order_acquire); }

  VNode* head() const noexcept { return vh_; }
  VNode* tail() const noexcept { return vtail_; }

  // Direct traversal of unmarked nodes. Only meaningful when no operation is
  // running concurrently.
  SnapshotResult readQuiescent() const;

  // Stall hooks for progress tests. Set before starting threads.
  void setHooks(SnapshotHooks* hooks) noexcept { hooks_ = hooks; }

  // Frees unlinked nodes and retired collectors. Requires quiescence.
  void collectGarbage();
  std::size_t retiredNodeCount() const;

 private:
  struct Retired {
    std::vector<VNode*> vertices;
    std::vector<ENode*> edges;
  };

  VNode* newVertex(Key k);
  void retire(Tid tid, VNode* v) { retired_[tid].vertices.push_back(v); }
  void retire(Tid tid, ENode* e) { retired_[tid].edges.push_back(e); }
  void freeVertex(VNode* v);
  void freeRetiredNodes();
  static void checkKey(Key k);
  static void checkEdge(Key k, Key l);

  SnapshotResult takeSnapshotCooperative(Tid tid);
  SnapshotResult takeSnapshotIndependent(Tid tid);

  ThreadRegistry registry_;
  SnapshotEngine engine_;
  EpochReclaimer reclaimer_;
  ENode* etail_;  // shared +inf sentinel terminating every edge list
  VNode* vtail_;
  VNode* vh_;
  std::atomic<SnapCollector*> psc_{nullptr};
  std::unique_ptr<std::atomic<SnapCollector*>[]> privateCollectors_;
  std::unique_ptr<Retired[]> retired_;
  SnapshotHooks* hooks_ = nullptr;
};

}  // namespace cgraph

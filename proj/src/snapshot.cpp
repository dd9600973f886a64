#include "cgraph/snapshot.hpp"

#include <algorithm>
#include <functional>

#include "cgraph/graph.hpp"

namespace cgraph {

namespace {

using SVRef = TaggedRef<SnapVnode>;
using SERef = TaggedRef<SnapEnode>;

bool claim(std::atomic<WorkStatus>& status, WorkStatus from, WorkStatus to) {
  WorkStatus expected = from;
  return status.compare_exchange_strong(expected, to);
}

// Appends `item` after the chain tail if its key is larger than the tail's.
// `tail` is the caller's private hint and only moves forward. Returns false
// once the chain has been closed.
template <typename Snap, typename MakeFn>
bool appendMonotone(Snap*& tail, AtomicTaggedRef<Snap> Snap::*link, Key Snap::*keyOf, Key key,
                    MakeFn make) {
  Snap* fresh = nullptr;
  for (;;) {
    TaggedRef<Snap> next = (tail->*link).load();
    if (next.mark()) {
      delete fresh;
      return false;
    }
    if (next.target() != nullptr) {
      tail = next.target();
      continue;
    }
    if (tail->*keyOf >= key) {
      delete fresh;
      return true;
    }
    if (fresh == nullptr) fresh = make();
    if ((tail->*link).compareExchange(next, TaggedRef<Snap>(fresh))) {
      tail = fresh;
      return true;
    }
  }
}

template <typename Snap>
void closeChain(Snap* tail, AtomicTaggedRef<Snap> Snap::*link) {
  for (;;) {
    TaggedRef<Snap> next = (tail->*link).load();
    if (next.mark()) return;
    if (next.target() != nullptr) {
      tail = next.target();
      continue;
    }
    if ((tail->*link).compareExchange(next, markTag(next))) return;
  }
}

template <typename T>
const T& publishOnce(std::atomic<const T*>& cell, std::unique_ptr<T> value) {
  const T* expected = nullptr;
  if (cell.compare_exchange_strong(expected, value.get())) return *value.release();
  return *expected;
}

}  // namespace

std::string_view toString(StallSite site) noexcept {
  switch (site) {
    case StallSite::AfterAcquire: return "after-acquire";
    case StallSite::AfterCollectVnodes: return "after-collect-vnodes";
    case StallSite::IteratorClaim: return "iterator-claim";
    case StallSite::BeforeReconstruction: return "before-reconstruction";
    case StallSite::ReconstructionClaim: return "reconstruction-claim";
  }
  return "?";
}

SnapVnode::~SnapVnode() {
  SnapEnode* e = headEnode.enext.load().target();
  while (e != nullptr) {
    SnapEnode* next = e->enext.load().target();
    delete e;
    e = next;
  }
  delete edges.load();
}

// Lookup tables are vectors sorted by address, searched with binary search.
struct SnapCollector::Plan {
  template <typename T>
  static bool has(const std::vector<const T*>& sorted, const T* x) {
    return std::binary_search(sorted.begin(), sorted.end(), x, std::less<const T*>{});
  }

  std::vector<const VNode*> members;
  std::vector<std::pair<Key, const VNode*>> ordered;  // members by ascending key
  std::vector<std::pair<const VNode*, const SnapVnode*>> collected;
  std::vector<const ENode*> deletedEdges;
  std::vector<std::pair<const VNode*, const EReportRecord*>> insertedEdges;

  const SnapVnode* collectedFor(const VNode* v) const {
    auto it = std::lower_bound(collected.begin(), collected.end(), v, [](const auto& e, const VNode* x) {
      return std::less<const VNode*>{}(e.first, x);
    });
    return it != collected.end() && it->first == v ? it->second : nullptr;
  }
};

SnapCollector::SnapCollector(std::size_t maxThreads)
    : maxThreads_(maxThreads),
      vReports_(std::make_unique<AtomicTaggedRef<VReport>[]>(maxThreads)),
      eReports_(std::make_unique<AtomicTaggedRef<EReport>[]>(maxThreads)) {}

SnapCollector::~SnapCollector() {
  SnapVnode* sv = head_.vnext.load().target();
  while (sv != nullptr) {
    SnapVnode* next = sv->vnext.load().target();
    delete sv;
    sv = next;
  }
  for (std::size_t i = 0; i < maxThreads_; ++i) {
    for (VReport* r = vReports_[i].load().target(); r != nullptr;) {
      VReport* next = r->nextReport;
      delete r;
      r = next;
    }
    for (EReport* r = eReports_[i].load().target(); r != nullptr;) {
      EReport* next = r->nextReport;
      delete r;
      r = next;
    }
  }
  delete mergedVreports_.load();
  delete mergedEreports_.load();
  delete plan_.load();
  delete result_.load();
}

// ---------------------------------------------------------------------------
// Reports

bool SnapCollector::pushVertexReport(Tid tid, const VNode* victim, ReportAction action) {
  AtomicTaggedRef<VReport>& slot = vReports_[tid];
  TaggedRef<VReport> head = slot.load();
  if (head.mark()) return false;
  auto* report = new VReport{victim, victim->k, action, head.target()};
  while (!slot.compareExchange(head, TaggedRef<VReport>(report))) {
    if (head.mark()) {
      delete report;
      return false;
    }
    report->nextReport = head.target();
  }
  return true;
}

bool SnapCollector::pushEdgeReport(Tid tid, const ENode* victim, const VNode* source, ReportAction action) {
  AtomicTaggedRef<EReport>& slot = eReports_[tid];
  TaggedRef<EReport> head = slot.load();
  if (head.mark()) return false;
  auto* report = new EReport{victim, source, victim->ptv, source->k, victim->l, action, head.target()};
  while (!slot.compareExchange(head, TaggedRef<EReport>(report))) {
    if (head.mark()) {
      delete report;
      return false;
    }
    report->nextReport = head.target();
  }
  return true;
}

void SnapCollector::blockFurtherReports() {
  for (std::size_t tid = 0; tid < maxThreads_; ++tid) {
    TaggedRef<EReport> e = clearTag(eReports_[tid].load());
    while (!e.mark() && !eReports_[tid].compareExchange(e, markTag(e))) {
    }
    TaggedRef<VReport> v = clearTag(vReports_[tid].load());
    while (!v.mark() && !vReports_[tid].compareExchange(v, markTag(v))) {
    }
  }
}

const std::vector<VReportRecord>& SnapCollector::readVreports() {
  if (const auto* merged = mergedVreports_.load()) return *merged;
  auto merged = std::make_unique<std::vector<VReportRecord>>();
  for (std::size_t tid = 0; tid < maxThreads_; ++tid) {
    for (const VReport* r = vReports_[tid].load().target(); r != nullptr; r = r->nextReport) {
      merged->push_back({r->vnode, r->key, r->action});
    }
  }
  std::sort(merged->begin(), merged->end(), [](const VReportRecord& a, const VReportRecord& b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.vnode != b.vnode) return std::less<const VNode*>{}(a.vnode, b.vnode);
    return a.action < b.action;
  });
  return publishOnce(mergedVreports_, std::move(merged));
}

const std::vector<EReportRecord>& SnapCollector::readEreports() {
  if (const auto* merged = mergedEreports_.load()) return *merged;
  auto merged = std::make_unique<std::vector<EReportRecord>>();
  for (std::size_t tid = 0; tid < maxThreads_; ++tid) {
    for (const EReport* r = eReports_[tid].load().target(); r != nullptr; r = r->nextReport) {
      merged->push_back({r->enode, r->source, r->destination, r->sourceKey, r->destKey, r->action});
    }
  }
  std::sort(merged->begin(), merged->end(), [](const EReportRecord& a, const EReportRecord& b) {
    if (a.sourceKey != b.sourceKey) return a.sourceKey < b.sourceKey;
    if (a.destKey != b.destKey) return a.destKey < b.destKey;
    if (a.enode != b.enode) return std::less<const ENode*>{}(a.enode, b.enode);
    return a.action < b.action;
  });
  return publishOnce(mergedEreports_, std::move(merged));
}

// ---------------------------------------------------------------------------
// Collection

void SnapCollector::collectVnode(const VNode* head) {
  SnapVnode* tail = &head_;
  const VNode* cur = head->vnxt.load().target();
  while (cur->k != kPosInfKey && isActive()) {
    const TaggedRef<VNode> next = cur->vnxt.load();
    if (!next.mark()) {
      const bool open = appendMonotone(tail, &SnapVnode::vnext, &SnapVnode::k, cur->k,
                                       [cur] { return new SnapVnode(cur, cur->k); });
      if (!open) return;
    }
    cur = next.target();
  }
  closeChain(tail, &SnapVnode::vnext);
}

void SnapCollector::collectEnode(SnapVnode& sv) {
  SnapEnode* tail = &sv.headEnode;
  const ENode* cur = sv.vnode->ehead->enext.load().target();
  while (cur->l != kPosInfKey && isActive()) {
    const TaggedRef<ENode> next = cur->enext.load();
    if (!next.mark()) {
      const bool open = appendMonotone(tail, &SnapEnode::enext, &SnapEnode::l, cur->l,
                                       [cur] { return new SnapEnode(cur, cur->l, cur->ptv); });
      if (!open) return;
    }
    cur = next.target();
  }
}

void SnapCollector::blockFurtherEnodes(SnapVnode& sv) { closeChain(&sv.headEnode, &SnapEnode::enext); }

void SnapCollector::iterator(const VNode* graphHead, SnapshotHooks* hooks, Tid tid) {
  collectVnode(graphHead);
  stallPoint(hooks, StallSite::AfterCollectVnodes, tid);

  for (SnapVnode* sv = head_.vnext.load().target(); sv != nullptr && isActive();
       sv = sv->vnext.load().target()) {
    if (claim(sv->iterEdgeStatus, WorkStatus::Idle, WorkStatus::Active)) {
      stallPoint(hooks, StallSite::IteratorClaim, tid, sv->k);
      collectEnode(*sv);
      blockFurtherEnodes(*sv);
      claim(sv->iterEdgeStatus, WorkStatus::Active, WorkStatus::Done);
    }
  }
  // Helping pass: finish any vertex whose claimant has not.
  for (SnapVnode* sv = head_.vnext.load().target(); sv != nullptr && isActive();
       sv = sv->vnext.load().target()) {
    if (sv->iterEdgeStatus.load() == WorkStatus::Active) {
      collectEnode(*sv);
      blockFurtherEnodes(*sv);
      claim(sv->iterEdgeStatus, WorkStatus::Active, WorkStatus::Done);
    }
  }
}

std::vector<const SnapVnode*> SnapCollector::readCollectedVnodes() const {
  std::vector<const SnapVnode*> out;
  for (const SnapVnode* sv = head_.vnext.load().target(); sv != nullptr; sv = sv->vnext.load().target()) {
    out.push_back(sv);
  }
  return out;
}

std::vector<const SnapEnode*> SnapCollector::readCollectedEnodes(const SnapVnode& sv) const {
  std::vector<const SnapEnode*> out;
  for (const SnapEnode* se = sv.headEnode.enext.load().target(); se != nullptr; se = se->enext.load().target()) {
    out.push_back(se);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reconstruction

const SnapCollector::Plan& SnapCollector::plan() {
  if (const Plan* p = plan_.load()) return *p;
  auto p = std::make_unique<Plan>();
  const std::less<const VNode*> byAddress;
  auto sortByAddress = [&](auto& v) { std::sort(v.begin(), v.end(), std::less<>{}); };

  for (const SnapVnode* sv = head_.vnext.load().target(); sv != nullptr; sv = sv->vnext.load().target()) {
    p->collected.emplace_back(sv->vnode, sv);
  }
  std::vector<const VNode*> deleted;
  std::vector<const VNode*> inserted;
  std::vector<std::pair<Key, const VNode*>> candidates;
  candidates.reserve(p->collected.size());
  for (const auto& [node, sv] : p->collected) candidates.emplace_back(sv->k, node);
  for (const VReportRecord& r : readVreports()) {
    if (r.action == ReportAction::Delete) {
      deleted.push_back(r.vnode);
    } else {
      inserted.push_back(r.vnode);
      candidates.emplace_back(r.key, r.vnode);
    }
  }
  std::sort(p->collected.begin(), p->collected.end(),
            [&](const auto& a, const auto& b) { return byAddress(a.first, b.first); });
  sortByAddress(deleted);
  sortByAddress(inserted);
  std::sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return byAddress(a.second, b.second);
  });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::erase_if(candidates, [&](const auto& c) { return Plan::has(deleted, c.second); });

  // Two generations of one key can both survive when their reports land in
  // differently-timed slots. Keep one: the reported insert when there is
  // exactly one, otherwise the collected node.
  p->ordered.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size();) {
    std::size_t j = i;
    while (j < candidates.size() && candidates[j].first == candidates[i].first) ++j;
    std::size_t pick = i;
    if (j - i > 1) {
      std::size_t insertedCount = 0;
      for (std::size_t t = i; t < j; ++t) {
        if (Plan::has(inserted, candidates[t].second)) {
          ++insertedCount;
          pick = t;
        }
      }
      if (insertedCount != 1) {
        pick = i;
        for (std::size_t t = i; t < j; ++t) {
          if (p->collectedFor(candidates[t].second) != nullptr) {
            pick = t;
            break;
          }
        }
      }
    }
    p->ordered.push_back(candidates[pick]);
    i = j;
  }
  p->members.reserve(p->ordered.size());
  for (const auto& entry : p->ordered) p->members.push_back(entry.second);
  sortByAddress(p->members);

  for (const EReportRecord& r : readEreports()) {
    if (r.action == ReportAction::Delete) {
      p->deletedEdges.push_back(r.enode);
    } else {
      p->insertedEdges.emplace_back(r.source, &r);
    }
  }
  sortByAddress(p->deletedEdges);
  std::stable_sort(p->insertedEdges.begin(), p->insertedEdges.end(),
                   [&](const auto& a, const auto& b) { return byAddress(a.first, b.first); });
  return publishOnce(plan_, std::move(p));
}

std::vector<Key> SnapCollector::edgesFor(const Plan& plan, const VNode* source,
                                         const SnapVnode* collected) const {
  std::vector<Key> out;
  auto admit = [&](const ENode* e, Key dest, const VNode* destination) {
    if (!Plan::has(plan.deletedEdges, e) && Plan::has(plan.members, destination)) out.push_back(dest);
  };
  bool sorted = true;
  if (collected != nullptr) {
    for (const SnapEnode* se = collected->headEnode.enext.load().target(); se != nullptr;
         se = se->enext.load().target()) {
      admit(se->enode, se->l, se->ptv);
    }
  }
  auto it = std::lower_bound(plan.insertedEdges.begin(), plan.insertedEdges.end(), source,
                             [](const auto& e, const VNode* x) { return std::less<const VNode*>{}(e.first, x); });
  for (; it != plan.insertedEdges.end() && it->first == source; ++it) {
    admit(it->second->enode, it->second->destKey, it->second->destination);
    sorted = false;
  }
  if (!sorted) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

void SnapCollector::reconstructVertex(const Plan& plan, SnapVnode& sv) {
  if (sv.edges.load() == nullptr) {
    auto edges = std::make_unique<std::vector<Key>>();
    if (Plan::has(plan.members, sv.vnode)) *edges = edgesFor(plan, sv.vnode, &sv);
    publishOnce(sv.edges, std::move(edges));
  }
  claim(sv.edgeStatus, WorkStatus::Active, WorkStatus::Done);
}

const SnapshotResult& SnapCollector::publishResult(const Plan& plan) {
  auto out = std::make_unique<SnapshotResult>();
  out->vertices.reserve(plan.ordered.size());
  out->adjacency.reserve(plan.ordered.size());
  for (const auto& [key, node] : plan.ordered) {
    out->vertices.push_back(key);
    if (const SnapVnode* sv = plan.collectedFor(node)) {
      out->adjacency.push_back(*sv->edges.load());
    } else {
      out->adjacency.push_back(edgesFor(plan, node, nullptr));
    }
  }
  return publishOnce(result_, std::move(out));
}

const SnapshotResult& SnapCollector::reconstructionUsingReports(SnapshotHooks* hooks, Tid tid) {
  if (const SnapshotResult* r = result()) return *r;
  const Plan& p = plan();

  for (SnapVnode* sv = head_.vnext.load().target(); sv != nullptr && !reconstructDone();
       sv = sv->vnext.load().target()) {
    if (claim(sv->edgeStatus, WorkStatus::Idle, WorkStatus::Active)) {
      stallPoint(hooks, StallSite::ReconstructionClaim, tid, sv->k);
      reconstructVertex(p, *sv);
    }
  }
  for (SnapVnode* sv = head_.vnext.load().target(); sv != nullptr && !reconstructDone();
       sv = sv->vnext.load().target()) {
    if (sv->edgeStatus.load() == WorkStatus::Active) reconstructVertex(p, *sv);
  }
  if (result() == nullptr) publishResult(p);
  reconstructDone_.store(true);
  return *result();
}

// ---------------------------------------------------------------------------
// Graph side: forwarding and the snapshot driver

void Graph::reportVertex(const VNode* victim, ReportAction action, Tid tid) {
  if (engine_ == SnapshotEngine::Cooperative) {
    SnapCollector* sc = psc_.load();
    if (sc != nullptr && sc->isActive()) sc->pushVertexReport(tid, victim, action);
    return;
  }
  const std::size_t n = registry_.registered();
  for (std::size_t i = 0; i < n; ++i) {
    SnapCollector* sc = privateCollectors_[i].load();
    if (sc != nullptr && sc->isActive()) sc->pushVertexReport(tid, victim, action);
  }
}

void Graph::reportEdge(const ENode* victim, ReportAction action, Tid tid, const VNode* source) {
  if (engine_ == SnapshotEngine::Cooperative) {
    SnapCollector* sc = psc_.load();
    if (sc != nullptr && sc->isActive()) sc->pushEdgeReport(tid, victim, source, action);
    return;
  }
  const std::size_t n = registry_.registered();
  for (std::size_t i = 0; i < n; ++i) {
    SnapCollector* sc = privateCollectors_[i].load();
    if (sc != nullptr && sc->isActive()) sc->pushEdgeReport(tid, victim, source, action);
  }
}

SnapCollector* Graph::acquireSnapCollector(Tid tid) {
  SnapCollector* sc = psc_.load();
  if (sc != nullptr && sc->isActive()) return sc;
  auto* fresh = new SnapCollector(registry_.maxThreads());
  if (psc_.compare_exchange_strong(sc, fresh)) {
    if (sc != nullptr) reclaimer_.retire(tid, sc);
    return fresh;
  }
  delete fresh;
  return psc_.load();
}

SnapshotResult Graph::takeSnapshot(Tid tid) {
  auto guard = reclaimer_.pin(tid);
  return engine_ == SnapshotEngine::Cooperative ? takeSnapshotCooperative(tid) : takeSnapshotIndependent(tid);
}

SnapshotResult Graph::takeSnapshotCooperative(Tid tid) {
  SnapCollector* sc = acquireSnapCollector(tid);
  stallPoint(hooks_, StallSite::AfterAcquire, tid);
  if (const SnapshotResult* done = sc->result()) return *done;
  sc->iterator(vh_, hooks_, tid);
  sc->deactivate();
  sc->blockFurtherReports();
  stallPoint(hooks_, StallSite::BeforeReconstruction, tid);
  return sc->reconstructionUsingReports(hooks_, tid);
}

SnapshotResult Graph::takeSnapshotIndependent(Tid tid) {
  auto* sc = new SnapCollector(registry_.maxThreads());
  privateCollectors_[tid].store(sc);
  stallPoint(hooks_, StallSite::AfterAcquire, tid);
  sc->iterator(vh_, hooks_, tid);
  sc->deactivate();
  sc->blockFurtherReports();
  stallPoint(hooks_, StallSite::BeforeReconstruction, tid);
  SnapshotResult out = sc->reconstructionUsingReports(hooks_, tid);
  privateCollectors_[tid].store(nullptr);
  reclaimer_.retire(tid, sc);
  return out;
}

}  // namespace cgraph

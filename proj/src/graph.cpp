#include "cgraph/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cgraph {

namespace {
using VRef = TaggedRef<VNode>;
using ERef = TaggedRef<ENode>;
}  // namespace

std::string_view toString(OpResult r) noexcept {
  switch (r) {
    case OpResult::VertexAdded: return "VERTEX_ADDED";
    case OpResult::VertexAlreadyPresent: return "VERTEX_ALREADY_PRESENT";
    case OpResult::VertexRemoved: return "VERTEX_REMOVED";
    case OpResult::VertexNotPresent: return "VERTEX_NOT_PRESENT";
    case OpResult::VertexPresent: return "VERTEX_PRESENT";
    case OpResult::EdgeAdded: return "EDGE_ADDED";
    case OpResult::EdgePresent: return "EDGE_PRESENT";
    case OpResult::EdgeRemoved: return "EDGE_REMOVED";
    case OpResult::EdgeNotPresent: return "EDGE_NOT_PRESENT";
    case OpResult::EdgeFound: return "EDGE_FOUND";
  }
  return "?";
}

bool parseOpResult(std::string_view text, OpResult& out) noexcept {
  for (int i = 0; i <= static_cast<int>(OpResult::EdgeFound); ++i) {
    const auto r = static_cast<OpResult>(i);
    if (toString(r) == text) {
      out = r;
      return true;
    }
  }
  return false;
}

Graph::Graph(std::size_t maxThreads, SnapshotEngine engine)
    : registry_(maxThreads),
      engine_(engine),
      reclaimer_(maxThreads),
      etail_(new ENode(kPosInfKey, nullptr)),
      vtail_(new VNode(kPosInfKey, nullptr)),
      vh_(new VNode(kNegInfKey, nullptr)),
      privateCollectors_(std::make_unique<std::atomic<SnapCollector*>[]>(maxThreads)),
      retired_(std::make_unique<Retired[]>(maxThreads)) {
  vh_->vnxt.store(VRef(vtail_));
}

Graph::~Graph() {
  reclaimer_.drainAll();
  delete psc_.load();
  for (std::size_t i = 0; i < registry_.maxThreads(); ++i) delete privateCollectors_[i].load();
  freeRetiredNodes();
  VNode* v = vh_->vnxt.load().target();
  while (v != vtail_) {
    VNode* next = v->vnxt.load().target();
    freeVertex(v);
    v = next;
  }
  delete vh_;
  delete vtail_;
  delete etail_;
}

void Graph::checkKey(Key k) {
  if (!isUserKey(k)) throw std::invalid_argument("key " + std::to_string(k) + " is reserved for sentinels");
}

void Graph::checkEdge(Key k, Key l) {
  checkKey(k);
  checkKey(l);
  if (k == l) throw std::invalid_argument("self-loop edges are not supported (key " + std::to_string(k) + ")");
}

VNode* Graph::newVertex(Key k) {
  auto* head = new ENode(kNegInfKey, nullptr);
  head->enext.store(ERef(etail_));
  return new VNode(k, head);
}

void Graph::freeVertex(VNode* v) {
  ENode* e = v->ehead;
  while (e != nullptr && e != etail_) {
    ENode* next = e->enext.load().target();
    delete e;
    e = next;
  }
  delete v;
}

void Graph::freeRetiredNodes() {
  for (std::size_t i = 0; i < registry_.maxThreads(); ++i) {
    for (VNode* v : retired_[i].vertices) freeVertex(v);
    for (ENode* e : retired_[i].edges) delete e;
    retired_[i].vertices.clear();
    retired_[i].edges.clear();
  }
}

void Graph::collectGarbage() {
  reclaimer_.drainAll();
  SnapCollector* sc = psc_.load();
  if (sc != nullptr && !sc->isActive() && psc_.compare_exchange_strong(sc, nullptr)) delete sc;
  freeRetiredNodes();
}

std::size_t Graph::retiredNodeCount() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < registry_.maxThreads(); ++i) {
    n += retired_[i].vertices.size() + retired_[i].edges.size();
  }
  return n;
}

// ---------------------------------------------------------------------------
// Locate routines

std::pair<VNode*, VNode*> Graph::locV(VNode* start, Key k, Tid tid) {
  for (;;) {
    // A start node deleted under us can never be unlinked past; fall back to
    // the list head.
    if (start != vh_ && start->isDeleted()) start = vh_;
    VNode* pv = start;
    VNode* cv = pv->vnxt.load().target();
    bool restart = false;
    for (;;) {
      VRef cn = cv->vnxt.load();
      while (cn.mark()) {
        reportVertex(cv, ReportAction::Delete, tid);
        VRef expected(cv);
        if (!pv->vnxt.compareExchange(expected, VRef(cn.target()))) {
          restart = true;
          break;
        }
        retire(tid, cv);
        cv = cn.target();
        cn = cv->vnxt.load();
      }
      if (restart) break;
      if (cv->k >= k) return {pv, cv};
      pv = cv;
      cv = cn.target();
    }
  }
}

std::pair<ENode*, ENode*> Graph::locE(VNode* source, Key l, Tid tid) {
retry:
  ENode* pe = source->ehead;
  ENode* ce = pe->enext.load().target();
  for (;;) {
    ERef cnt = ce->enext.load();
    if (!cnt.mark() && ce->ptv != nullptr && ce->ptv->isDeleted()) {
      // Destination vertex is gone: the edge dies with it.
      reportEdge(ce, ReportAction::Delete, tid, source);
      if (!ce->enext.compareExchange(cnt, markTag(cnt))) goto retry;
      cnt = markTag(cnt);
    }
    if (cnt.mark()) {
      reportEdge(ce, ReportAction::Delete, tid, source);
      ERef expected(ce);
      if (!pe->enext.compareExchange(expected, ERef(cnt.target()))) goto retry;
      retire(tid, ce);
      ce = cnt.target();
      continue;
    }
    if (ce->l >= l) return {pe, ce};
    pe = ce;
    ce = cnt.target();
  }
}

std::pair<VNode*, VNode*> Graph::locC(VNode* start, Key k) const {
  VNode* pv = start;
  VNode* cv = pv->vnxt.load().target();
  while (cv->k < k) {
    pv = cv;
    cv = cv->vnxt.load().target();
  }
  return {pv, cv};
}

EndpointPair Graph::conVPlus(Key k, Key l, Tid tid) {
  VNode* cv1 = nullptr;
  VNode* cv2 = nullptr;
  if (k < l) {
    cv1 = locV(vh_, k, tid).second;
    if (cv1->k != k) return {};
    cv2 = locV(cv1, l, tid).second;
    if (cv2->k != l) return {};
  } else {
    cv2 = locV(vh_, l, tid).second;
    if (cv2->k != l) return {};
    cv1 = locV(cv2, k, tid).second;
    if (cv1->k != k) return {};
  }
  return {cv1, cv2, true};
}

EndpointPair Graph::conCPlus(Key k, Key l) const {
  VNode* cv1 = nullptr;
  VNode* cv2 = nullptr;
  if (k < l) {
    cv1 = locC(vh_, k).second;
    if (cv1->k != k) return {};
    cv2 = locC(cv1, l).second;
    if (cv2->k != l) return {};
  } else {
    cv2 = locC(vh_, l).second;
    if (cv2->k != l) return {};
    cv1 = locC(cv2, k).second;
    if (cv1->k != k) return {};
  }
  return {cv1, cv2, true};
}

// ---------------------------------------------------------------------------
// Point operations

OpResult Graph::addVertex(Key k, Tid tid) {
  checkKey(k);
  auto guard = reclaimer_.pin(tid);
  VNode* nv = nullptr;
  for (;;) {
    auto [pv, cv] = locV(vh_, k, tid);
    if (cv->k == k) {
      if (nv != nullptr) freeVertex(nv);
      reportVertex(cv, ReportAction::Insert, tid);
      return OpResult::VertexAlreadyPresent;
    }
    if (nv == nullptr) nv = newVertex(k);
    nv->vnxt.store(VRef(cv));
    VRef expected(cv);
    if (pv->vnxt.compareExchange(expected, VRef(nv))) {
      reportVertex(nv, ReportAction::Insert, tid);
      return OpResult::VertexAdded;
    }
  }
}

OpResult Graph::removeVertex(Key k, Tid tid) {
  checkKey(k);
  auto guard = reclaimer_.pin(tid);
  for (;;) {
    auto [pv, cv] = locV(vh_, k, tid);
    if (cv->k != k) return OpResult::VertexNotPresent;
    VRef cn = cv->vnxt.load();
    if (cn.mark()) continue;
    if (!cv->vnxt.compareExchange(cn, markTag(cn))) continue;
    reportVertex(cv, ReportAction::Delete, tid);
    VRef expected(cv);
    if (pv->vnxt.compareExchange(expected, VRef(cn.target()))) {
      retire(tid, cv);
    } else {
      locV(vh_, k, tid);  // someone moved pv; a fresh locate unlinks cv
    }
    return OpResult::VertexRemoved;
  }
}

OpResult Graph::containsVertex(Key k, Tid tid) {
  checkKey(k);
  auto guard = reclaimer_.pin(tid);
  VNode* cv = vh_->vnxt.load().target();
  while (cv->k < k) cv = cv->vnxt.load().target();
  if (cv->k != k) return OpResult::VertexNotPresent;
  if (!cv->isDeleted()) {
    reportVertex(cv, ReportAction::Insert, tid);
    return OpResult::VertexPresent;
  }
  reportVertex(cv, ReportAction::Delete, tid);
  return OpResult::VertexNotPresent;
}

OpResult Graph::addEdge(Key k, Key l, Tid tid) {
  checkEdge(k, l);
  auto guard = reclaimer_.pin(tid);
  const EndpointPair ends = conVPlus(k, l, tid);
  if (!ends.found) return OpResult::VertexNotPresent;
  ENode* ne = nullptr;
  for (;;) {
    for (VNode* endpoint : {ends.u, ends.v}) {
      if (endpoint->isDeleted()) {
        delete ne;
        reportVertex(endpoint, ReportAction::Delete, tid);
        return OpResult::VertexNotPresent;
      }
    }
    auto [pe, ce] = locE(ends.u, l, tid);
    if (ce->l == l) {
      delete ne;
      reportEdge(ce, ReportAction::Insert, tid, ends.u);
      return OpResult::EdgePresent;
    }
    if (ne == nullptr) ne = new ENode(l, ends.v);
    ne->enext.store(ERef(ce));
    ERef expected(ce);
    if (pe->enext.compareExchange(expected, ERef(ne))) {
      reportEdge(ne, ReportAction::Insert, tid, ends.u);
      return OpResult::EdgeAdded;
    }
  }
}

OpResult Graph::removeEdge(Key k, Key l, Tid tid) {
  checkEdge(k, l);
  auto guard = reclaimer_.pin(tid);
  const EndpointPair ends = conVPlus(k, l, tid);
  if (!ends.found) return OpResult::VertexNotPresent;
  for (;;) {
    for (VNode* endpoint : {ends.u, ends.v}) {
      if (endpoint->isDeleted()) {
        reportVertex(endpoint, ReportAction::Delete, tid);
        return OpResult::VertexNotPresent;
      }
    }
    auto [pe, ce] = locE(ends.u, l, tid);
    if (ce->l != l) return OpResult::EdgeNotPresent;
    ERef cnt = ce->enext.load();
    if (cnt.mark()) continue;
    if (!ce->enext.compareExchange(cnt, markTag(cnt))) continue;
    reportEdge(ce, ReportAction::Delete, tid, ends.u);
    ERef expected(ce);
    if (pe->enext.compareExchange(expected, ERef(cnt.target()))) {
      retire(tid, ce);
    } else {
      locE(ends.u, l, tid);
    }
    return OpResult::EdgeRemoved;
  }
}

OpResult Graph::containsEdge(Key k, Key l, Tid tid) {
  checkEdge(k, l);
  auto guard = reclaimer_.pin(tid);
  const EndpointPair ends = conCPlus(k, l);
  if (!ends.found) return OpResult::VertexNotPresent;
  ENode* ce = ends.u->ehead->enext.load().target();
  while (ce->l < l) ce = ce->enext.load().target();
  const bool hit = ce->l == l;
  if (hit && !ends.u->isDeleted() && !ends.v->isDeleted() && !ce->isDead()) {
    reportEdge(ce, ReportAction::Insert, tid, ends.u);
    return OpResult::EdgeFound;
  }
  for (VNode* endpoint : {ends.u, ends.v}) {
    if (endpoint->isDeleted()) {
      reportVertex(endpoint, ReportAction::Delete, tid);
      return OpResult::VertexNotPresent;
    }
  }
  if (hit) reportEdge(ce, ReportAction::Delete, tid, ends.u);
  return OpResult::EdgeNotPresent;
}

SnapshotResult Graph::readQuiescent() const {
  SnapshotResult out;
  for (VNode* v = vh_->vnxt.load().target(); v != vtail_; v = v->vnxt.load().target()) {
    if (v->isDeleted()) continue;
    out.vertices.push_back(v->k);
    auto& adj = out.adjacency.emplace_back();
    for (ENode* e = v->ehead->enext.load().target(); e != etail_; e = e->enext.load().target()) {
      if (!e->isDead()) adj.push_back(e->l);
    }
  }
  return out;
}

}  // namespace cgraph

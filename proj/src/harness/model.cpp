#include "cgraph/harness/model.hpp"

#include <cstring>
#include <sstream>
#include <stdexcept>

#include "cgraph/analytics.hpp"

namespace cgraph::harness {

namespace {
constexpr std::string_view kOpNames[] = {"addVertex", "removeVertex", "containsVertex",
                                         "addEdge",   "removeEdge",   "containsEdge",
                                         "snap",      "diameter",     "bc"};

void requireKey(Key k) {
  if (!isUserKey(k)) throw std::invalid_argument("reserved key in operation");
}
}  // namespace

std::string_view toString(OpKind kind) noexcept { return kOpNames[static_cast<int>(kind)]; }

std::optional<OpKind> parseOpKind(std::string_view name) noexcept {
  for (int i = 0; i < static_cast<int>(std::size(kOpNames)); ++i) {
    if (kOpNames[i] == name) return static_cast<OpKind>(i);
  }
  return std::nullopt;
}

int arity(OpKind kind) noexcept {
  switch (kind) {
    case OpKind::AddVertex:
    case OpKind::RemoveVertex:
    case OpKind::ContainsVertex:
      return 1;
    case OpKind::AddEdge:
    case OpKind::RemoveEdge:
    case OpKind::ContainsEdge:
      return 2;
    default:
      return 0;
  }
}

bool sameValue(const OpValue& a, const OpValue& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ra = std::get_if<OpResult>(&a)) return sameOutcome(*ra, std::get<OpResult>(b));
  return a == b;
}

std::string formatValue(const OpValue& v) {
  struct Visitor {
    std::string operator()(OpResult r) const { return std::string(toString(r)); }
    std::string operator()(const SnapshotResult& s) const {
      std::ostringstream out;
      out << '{';
      for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        if (i) out << ';';
        out << s.vertices[i] << ':';
        for (std::size_t j = 0; j < s.adjacency[i].size(); ++j) {
          if (j) out << ',';
          out << s.adjacency[i][j];
        }
      }
      out << '}';
      return out.str();
    }
    std::string operator()(DiameterValue d) const { return std::to_string(d.hops); }
    std::string operator()(const CentralityValue& c) const {
      return c.argmaxKey ? std::to_string(*c.argmaxKey) : std::string("none");
    }
  };
  return std::visit(Visitor{}, v);
}

OpValue SeqGraphModel::apply(const Op& op) {
  const int n = arity(op.kind);
  if (n >= 1) requireKey(op.a);
  if (n == 2) {
    requireKey(op.b);
    if (op.a == op.b) throw std::invalid_argument("self-loop edge operation");
  }
  switch (op.kind) {
    case OpKind::AddVertex:
      return adj_.try_emplace(op.a).second ? OpResult::VertexAdded : OpResult::VertexAlreadyPresent;
    case OpKind::RemoveVertex: {
      if (adj_.erase(op.a) == 0) return OpResult::VertexNotPresent;
      for (auto& [src, dests] : adj_) dests.erase(op.a);
      return OpResult::VertexRemoved;
    }
    case OpKind::ContainsVertex:
      return adj_.contains(op.a) ? OpResult::VertexPresent : OpResult::VertexNotPresent;
    case OpKind::AddEdge: {
      auto it = adj_.find(op.a);
      if (it == adj_.end() || !adj_.contains(op.b)) return OpResult::VertexNotPresent;
      return it->second.insert(op.b).second ? OpResult::EdgeAdded : OpResult::EdgePresent;
    }
    case OpKind::RemoveEdge: {
      auto it = adj_.find(op.a);
      if (it == adj_.end() || !adj_.contains(op.b)) return OpResult::VertexNotPresent;
      return it->second.erase(op.b) ? OpResult::EdgeRemoved : OpResult::EdgeNotPresent;
    }
    case OpKind::ContainsEdge: {
      auto it = adj_.find(op.a);
      if (it == adj_.end() || !adj_.contains(op.b)) return OpResult::VertexNotPresent;
      return it->second.contains(op.b) ? OpResult::EdgePresent : OpResult::EdgeNotPresent;
    }
    case OpKind::Snap:
      return state();
    case OpKind::Diameter:
      return DiameterValue{diameter(GraphView(state()))};
    case OpKind::Betweenness:
      return CentralityValue{betweennessCentrality(GraphView(state())).argmaxKey};
  }
  throw std::invalid_argument("unknown operation kind");
}

SnapshotResult SeqGraphModel::state() const {
  SnapshotResult out;
  out.vertices.reserve(adj_.size());
  out.adjacency.reserve(adj_.size());
  for (const auto& [k, dests] : adj_) {
    out.vertices.push_back(k);
    out.adjacency.emplace_back(dests.begin(), dests.end());
  }
  return out;
}

void SeqGraphModel::encode(std::string& out) const {
  auto put = [&out](Key k) {
    char buf[sizeof(Key)];
    std::memcpy(buf, &k, sizeof k);
    out.append(buf, sizeof buf);
  };
  put(static_cast<Key>(adj_.size()));
  for (const auto& [k, dests] : adj_) {
    put(k);
    put(static_cast<Key>(dests.size()));
    for (Key d : dests) put(d);
  }
}

std::pair<OpValue, SeqGraphModel> seqApply(SeqGraphModel model, const Op& op) {
  OpValue v = model.apply(op);
  return {std::move(v), std::move(model)};
}

}  // namespace cgraph::harness

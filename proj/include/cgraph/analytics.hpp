#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "cgraph/graph.hpp"
#include "cgraph/types.hpp"

namespace cgraph {

// Immutable dense view of a snapshot. Vertex i has key ids[i]; keys are in
// ascending order and adj[i] is the sorted list of dense successor indices.
class GraphView {
 public:
  GraphView() = default;
  explicit GraphView(const SnapshotResult& snapshot);

  std::size_t n() const noexcept { return ids_.size(); }
  const std::vector<Key>& ids() const noexcept { return ids_; }
  const std::vector<std::vector<std::uint32_t>>& adj() const noexcept { return adj_; }
  std::optional<std::uint32_t> indexOf(Key k) const;
  std::size_t edgeCount() const noexcept;

  SnapshotResult toSnapshot() const;

  // One line per vertex: `key: k1 k2 ...`
  void writeAdjacency(std::ostream& out) const;

  friend bool operator==(const GraphView&, const GraphView&) = default;

 private:
  std::vector<Key> ids_;
  std::vector<std::vector<std::uint32_t>> adj_;
};

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

GraphView snap(Graph& graph, Tid tid);

std::vector<std::uint32_t> bfsDistances(const GraphView& g, std::uint32_t source);

// Longest shortest-path hop count over ordered reachable pairs.
std::uint32_t diameter(const GraphView& g);

struct Betweenness {
  std::vector<double> scores;   // indexed like GraphView::ids()
  std::optional<Key> argmaxKey;  // empty graph -> nullopt
};

// Exact directed betweenness (endpoints excluded), accumulated per source
// over the BFS shortest-path DAG. Ties on the maximum go to the smallest key.
Betweenness betweennessCentrality(const GraphView& g);

}  // namespace cgraph

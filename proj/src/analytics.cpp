#include "cgraph/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cgraph {

GraphView::GraphView(const SnapshotResult& snapshot) : ids_(snapshot.vertices) {
  if (snapshot.adjacency.size() != ids_.size()) {
    throw std::invalid_argument("snapshot adjacency does not match vertex count");
  }
  if (!std::is_sorted(ids_.begin(), ids_.end()) ||
      std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw std::invalid_argument("snapshot vertices must be strictly ascending");
  }
  adj_.resize(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    auto& row = adj_[i];
    row.reserve(snapshot.adjacency[i].size());
    for (Key dest : snapshot.adjacency[i]) {
      auto idx = indexOf(dest);
      if (!idx) throw std::invalid_argument("edge to a vertex outside the snapshot");
      row.push_back(*idx);
    }
    std::sort(row.begin(), row.end());
  }
}

std::optional<std::uint32_t> GraphView::indexOf(Key k) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), k);
  if (it == ids_.end() || *it != k) return std::nullopt;
  return static_cast<std::uint32_t>(it - ids_.begin());
}

std::size_t GraphView::edgeCount() const noexcept {
  std::size_t m = 0;
  for (const auto& row : adj_) m += row.size();
  return m;
}

SnapshotResult GraphView::toSnapshot() const {
  SnapshotResult out;
  out.vertices = ids_;
  out.adjacency.reserve(adj_.size());
  for (const auto& row : adj_) {
    auto& keys = out.adjacency.emplace_back();
    for (std::uint32_t j : row) keys.push_back(ids_[j]);
  }
  return out;
}

void GraphView::writeAdjacency(std::ostream& out) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    out << ids_[i] << ':';
    for (std::uint32_t j : adj_[i]) out << ' ' << ids_[j];
    out << '\n';
  }
}

GraphView snap(Graph& graph, Tid tid) { return GraphView(graph.takeSnapshot(tid)); }

std::vector<std::uint32_t> bfsDistances(const GraphView& g, std::uint32_t source) {
  if (source >= g.n()) throw std::out_of_range("bfs source out of range");
  std::vector<std::uint32_t> dist(g.n(), kUnreached);
  std::vector<std::uint32_t> queue;
  queue.reserve(g.n());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    for (std::uint32_t w : g.adj()[u]) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::uint32_t diameter(const GraphView& g) {
  std::uint32_t best = 0;
  for (std::uint32_t s = 0; s < g.n(); ++s) {
    for (std::uint32_t d : bfsDistances(g, s)) {
      if (d != kUnreached) best = std::max(best, d);
    }
  }
  return best;
}

Betweenness betweennessCentrality(const GraphView& g) {
  const std::size_t n = g.n();
  Betweenness out;
  out.scores.assign(n, 0.0);
  if (n == 0) return out;

  std::vector<std::uint32_t> order;
  std::vector<std::int64_t> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<std::vector<std::uint32_t>> preds(n);
  order.reserve(n);

  for (std::uint32_t s = 0; s < n; ++s) {
    order.clear();
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::uint32_t v = order[head];
      for (std::uint32_t w : g.adj()[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    // Dependencies flow back from the farthest vertices.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::uint32_t w = *it;
      for (std::uint32_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) out.scores[w] += delta[w];
    }
  }

  // Scores within rounding noise of each other count as tied.
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double slack = 1e-9 * std::max(1.0, std::abs(out.scores[best]));
    if (out.scores[i] > out.scores[best] + slack) best = i;
  }
  out.argmaxKey = g.ids()[best];
  return out;
}

}  // namespace cgraph

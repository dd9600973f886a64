#include "cgraph/bench/runner.hpp"

#include <algorithm>
#include <chrono>
#include <latch>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "cgraph/analytics.hpp"
#include "cgraph/bench/dataset.hpp"

namespace cgraph::bench {

std::string_view toString(EngineKind e) noexcept {
  return e == EngineKind::WaitFree ? "waitfree" : "baseline";
}

std::optional<EngineKind> parseEngineKind(std::string_view name) noexcept {
  if (name == "waitfree") return EngineKind::WaitFree;
  if (name == "baseline" || name == "independent-baseline") return EngineKind::Baseline;
  return std::nullopt;
}

void BenchConfig::validate() const {
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (!(durationSeconds > 0)) throw std::invalid_argument("duration must be positive");
  if (keySpace < 0) throw std::invalid_argument("key space must be non-negative");
  profile.validate();
  if (!datasetPath) {
    const Key space = keySpace ? keySpace : static_cast<Key>(2 * initialVertices);
    if (static_cast<std::size_t>(space) < initialVertices) {
      throw std::invalid_argument("key space smaller than the initial vertex count");
    }
    const double n = static_cast<double>(initialVertices);
    if (static_cast<double>(initialEdges) > n * (n - 1)) {
      throw std::invalid_argument("more initial edges than vertex pairs");
    }
  }
}

Key populate(Graph& graph, const BenchConfig& cfg, Tid tid) {
  if (cfg.datasetPath) {
    const EdgeList data = loadSnapEdgeList(*cfg.datasetPath);
    for (Key k : data.vertices) graph.addVertex(k, tid);
    for (auto [u, v] : data.edges) graph.addEdge(u, v, tid);
    if (cfg.keySpace) return cfg.keySpace;
    return data.vertices.empty() ? 2 : std::max<Key>(2, data.vertices.back() + 1);
  }

  const Key space = std::max<Key>(2, cfg.keySpace ? cfg.keySpace
                                                  : static_cast<Key>(2 * cfg.initialVertices));
  std::mt19937_64 rng(cfg.seed);
  // Distinct uniform keys: a partial shuffle of the key range when it is
  // small enough, rejection sampling otherwise.
  std::vector<Key> keys;
  keys.reserve(cfg.initialVertices);
  std::uniform_int_distribution<Key> anyKey(0, space - 1);
  if (space <= static_cast<Key>(4 * cfg.initialVertices + 1024)) {
    std::vector<Key> all(static_cast<std::size_t>(space));
    std::iota(all.begin(), all.end(), Key{0});
    std::shuffle(all.begin(), all.end(), rng);
    keys.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cfg.initialVertices));
  } else {
    while (keys.size() < cfg.initialVertices) {
      const Key k = anyKey(rng);
      if (graph.addVertex(k, tid) == OpResult::VertexAdded) keys.push_back(k);
    }
  }
  for (Key k : keys) graph.addVertex(k, tid);

  if (keys.size() >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
    std::size_t added = 0;
    while (added < cfg.initialEdges) {
      const Key u = keys[pick(rng)];
      const Key v = keys[pick(rng)];
      if (u != v && graph.addEdge(u, v, tid) == OpResult::EdgeAdded) ++added;
    }
  }
  return space;
}

namespace {

void runAnalytics(Graph& graph, AnalyticsKind kind, Tid tid) {
  switch (kind) {
    case AnalyticsKind::Snapshot:
      (void)graph.takeSnapshot(tid);
      break;
    case AnalyticsKind::Diameter:
      (void)diameter(snap(graph, tid));
      break;
    case AnalyticsKind::Betweenness:
      (void)betweennessCentrality(snap(graph, tid));
      break;
  }
}

void execute(Graph& graph, const GeneratedOp& op, AnalyticsKind analytics, Tid tid) {
  switch (op.cls) {
    case OpClass::AddVertex:
      graph.addVertex(op.a, tid);
      break;
    case OpClass::RemoveVertex:
      graph.removeVertex(op.a, tid);
      break;
    case OpClass::ContainsVertex:
      graph.containsVertex(op.a, tid);
      break;
    case OpClass::AddEdge:
      graph.addEdge(op.a, op.b, tid);
      break;
    case OpClass::RemoveEdge:
      graph.removeEdge(op.a, op.b, tid);
      break;
    case OpClass::ContainsEdge:
      graph.containsEdge(op.a, op.b, tid);
      break;
    case OpClass::Analytics:
      runAnalytics(graph, analytics, tid);
      break;
  }
}

}  // namespace

MetricsRecord runBenchmark(const BenchConfig& cfg) {
  cfg.validate();
  const SnapshotEngine engine = cfg.engine == EngineKind::WaitFree ? SnapshotEngine::Cooperative
                                                                   : SnapshotEngine::Independent;
  Graph graph(cfg.threads + 1, engine);
  const Tid loader = graph.registerThread();
  const Key space = populate(graph, cfg, loader);

  std::vector<MetricsRecord> perWorker(cfg.threads);
  std::vector<Tid> tids;
  for (std::size_t i = 0; i < cfg.threads; ++i) tids.push_back(graph.registerThread());

  std::latch start(static_cast<std::ptrdiff_t>(cfg.threads) + 1);
  std::vector<std::thread> workers;
  using Clock = std::chrono::steady_clock;
  const auto duration = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(cfg.durationSeconds));
  for (std::size_t i = 0; i < cfg.threads; ++i) {
    workers.emplace_back([&, i] {
      OperationGenerator gen(cfg.profile, space, cfg.seed, tids[i]);
      MetricsRecord& m = perWorker[i];
      start.arrive_and_wait();
      const auto deadline = Clock::now() + duration;
      for (auto now = Clock::now(); now < deadline;) {
        const GeneratedOp op = gen.next();
        execute(graph, op, cfg.analytics, tids[i]);
        const auto end = Clock::now();
        m.add(op.cls, static_cast<std::uint64_t>(
                          std::chrono::duration_cast<std::chrono::nanoseconds>(end - now).count()));
        now = end;
      }
    });
  }
  start.arrive_and_wait();
  for (auto& w : workers) w.join();

  MetricsRecord total;
  total.analytics = cfg.analytics;
  for (const auto& m : perWorker) total.merge(m);
  return total;
}

}  // namespace cgraph::bench

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "cgraph/bench/metrics.hpp"
#include "cgraph/bench/workload.hpp"
#include "cgraph/graph.hpp"

namespace cgraph::bench {

enum class EngineKind : std::uint8_t { WaitFree, Baseline };

std::string_view toString(EngineKind e) noexcept;
std::optional<EngineKind> parseEngineKind(std::string_view name) noexcept;

struct BenchConfig {
  std::size_t threads = 1;
  double durationSeconds = 1.0;
  std::size_t initialVertices = 10'000;
  std::size_t initialEdges = 20'000;
  // 0 picks a default: twice initialVertices, or max dataset key + 1.
  Key keySpace = 0;
  std::uint64_t seed = 1;
  WorkloadProfile profile = WorkloadProfile::readHeavy();
  AnalyticsKind analytics = AnalyticsKind::Snapshot;
  EngineKind engine = EngineKind::WaitFree;
  std::optional<std::filesystem::path> datasetPath;

  // Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

// Seeds the graph from the dataset or with uniform random keys and edges.
// Returns the key space the workers should draw from.
Key populate(Graph& graph, const BenchConfig& cfg, Tid tid);

MetricsRecord runBenchmark(const BenchConfig& cfg);

}  // namespace cgraph::bench

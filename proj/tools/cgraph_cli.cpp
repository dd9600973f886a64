#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "cgraph/analytics.hpp"
#include "cgraph/bench/dataset.hpp"
#include "cgraph/bench/runner.hpp"
#include "cgraph/harness/checker.hpp"
#include "cgraph/harness/history.hpp"

using namespace cgraph;

namespace {

int runBench(const bench::BenchConfig& cfg, const std::string& out) {
  const bench::MetricsRecord record = bench::runBenchmark(cfg);
  if (out.empty() || out == "-") {
    bench::emitCsv(record, std::cout);
  } else {
    bench::emitCsv(record, std::filesystem::path(out));
  }
  return 0;
}

int runSnapshot(const std::string& dataset, const std::string& out) {
  const bench::EdgeList data = bench::loadSnapEdgeList(dataset);
  Graph graph(1);
  const Tid tid = graph.registerThread();
  for (Key k : data.vertices) graph.addVertex(k, tid);
  for (auto [u, v] : data.edges) graph.addEdge(u, v, tid);
  const GraphView view = snap(graph, tid);
  if (out.empty() || out == "-") {
    view.writeAdjacency(std::cout);
    return 0;
  }
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot open " + out + " for writing");
  view.writeAdjacency(file);
  return 0;
}

int runCheck(const std::string& path, std::size_t budget) {
  const auto events = harness::readHistoryFile(path);
  harness::CheckOptions options;
  options.nodeBudget = budget;
  const harness::CheckResult result = harness::checkLinearizable(events, options);
  std::cout << harness::toString(result.verdict) << " (" << result.explored << " nodes)\n";
  if (result.verdict == harness::Verdict::NotLinearizable) {
    std::cout << result.detail << "\ncounterexample:\n";
    harness::writeHistory(result.counterexample, std::cout);
    return 3;
  }
  return result.ok() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concurrent graph benchmark and verification tool"};
  app.require_subcommand(1);

  bench::BenchConfig cfg;
  std::string profile = "read-heavy", analytics = "snapshot", engine = "waitfree", dataset, out;
  int analyticsPct = -1;
  auto* benchCmd = app.add_subcommand("bench", "Run a timed workload and write metrics as CSV");
  benchCmd->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  benchCmd->add_option("--duration", cfg.durationSeconds, "Run time in seconds")
      ->check(CLI::PositiveNumber);
  benchCmd->add_option("--profile", profile, "Operation mix")
      ->check(CLI::IsMember({"read-heavy", "update-heavy"}));
  benchCmd->add_option("--analytics", analytics, "Graph-set operation to run")
      ->check(CLI::IsMember({"snapshot", "diameter", "bc"}));
  benchCmd->add_option("--analytics-pct", analyticsPct,
                       "Analytics share in percent, taken from the lookup classes")
      ->check(CLI::Range(0, 100));
  benchCmd->add_option("--engine", engine, "Snapshot engine")
      ->check(CLI::IsMember({"waitfree", "baseline"}));
  benchCmd->add_option("--dataset", dataset, "SNAP edge list to load instead of random data")
      ->check(CLI::ExistingFile);
  benchCmd->add_option("--seed", cfg.seed, "RNG seed");
  benchCmd->add_option("--vertices", cfg.initialVertices, "Initial random vertices");
  benchCmd->add_option("--edges", cfg.initialEdges, "Initial random edges");
  benchCmd->add_option("--key-space", cfg.keySpace, "Keys are drawn from [0, key-space)");
  benchCmd->add_option("--out", out, "CSV output file (stdout if omitted)");

  std::string snapDataset, snapOut;
  auto* snapCmd = app.add_subcommand("snapshot", "Load a SNAP edge list and print its adjacency");
  snapCmd->add_option("dataset", snapDataset, "SNAP edge list")->required()->check(CLI::ExistingFile);
  snapCmd->add_option("--out", snapOut, "Output file (stdout if omitted)");

  std::string historyPath;
  std::size_t budget = harness::CheckOptions{}.nodeBudget;
  auto* checkCmd = app.add_subcommand("check", "Check a recorded history for linearizability");
  checkCmd->add_option("history", historyPath, "History file")->required()->check(CLI::ExistingFile);
  checkCmd->add_option("--budget", budget, "Search node budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*benchCmd) {
      cfg.profile = *bench::WorkloadProfile::byName(profile);
      if (analyticsPct >= 0) cfg.profile = cfg.profile.withAnalyticsPercent(analyticsPct);
      cfg.analytics = *bench::parseAnalyticsKind(analytics);
      cfg.engine = *bench::parseEngineKind(engine);
      if (!dataset.empty()) cfg.datasetPath = dataset;
      return runBench(cfg, out);
    }
    if (*snapCmd) return runSnapshot(snapDataset, snapOut);
    if (*checkCmd) return runCheck(historyPath, budget);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const harness::HistoryFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bench::DatasetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

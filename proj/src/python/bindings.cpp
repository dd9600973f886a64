#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cgraph/analytics.hpp"
#include "cgraph/bench/dataset.hpp"
#include "cgraph/bench/runner.hpp"
#include "cgraph/graph.hpp"
#include "cgraph/harness/checker.hpp"
#include "cgraph/harness/history.hpp"

namespace py = pybind11;
using namespace cgraph;

namespace {

py::dict toDict(const SnapshotResult& s) {
  py::dict out;
  for (std::size_t i = 0; i < s.vertices.size(); ++i) out[py::int_(s.vertices[i])] = s.adjacency[i];
  return out;
}

SnapshotResult fromDict(const std::map<Key, std::vector<Key>>& adjacency) {
  SnapshotResult s;
  for (const auto& [k, out] : adjacency) {
    s.vertices.push_back(k);
    std::vector<Key> row = out;
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    s.adjacency.push_back(std::move(row));
  }
  return s;
}

py::dict benchmark(std::size_t threads, double duration, const std::string& profile,
                   const std::string& analytics, std::optional<int> analyticsPercent,
                   const std::string& engine, std::size_t vertices, std::size_t edges,
                   std::uint64_t seed, std::optional<std::filesystem::path> dataset) {
  bench::BenchConfig cfg;
  cfg.threads = threads;
  cfg.durationSeconds = duration;
  cfg.initialVertices = vertices;
  cfg.initialEdges = edges;
  cfg.seed = seed;
  cfg.datasetPath = std::move(dataset);
  auto p = bench::WorkloadProfile::byName(profile);
  if (!p) throw py::value_error("unknown profile: " + profile);
  cfg.profile = analyticsPercent ? p->withAnalyticsPercent(*analyticsPercent) : *p;
  auto a = bench::parseAnalyticsKind(analytics);
  if (!a) throw py::value_error("unknown analytics kind: " + analytics);
  cfg.analytics = *a;
  auto e = bench::parseEngineKind(engine);
  if (!e) throw py::value_error("unknown engine: " + engine);
  cfg.engine = *e;

  bench::MetricsRecord r;
  {
    py::gil_scoped_release release;
    r = bench::runBenchmark(cfg);
  }
  py::dict classes;
  for (std::size_t c = 0; c < bench::kOpClassCount; ++c) {
    const auto& m = r.classes[c];
    if (m.count == 0) continue;
    py::dict row;
    row["count"] = m.count;
    row["avg_us"] = m.averageMicros();
    classes[py::str(std::string(toString(static_cast<bench::OpClass>(c))))] = row;
  }
  py::dict out;
  out["analytics"] = std::string(toString(r.analytics));
  out["total_ops"] = r.totalCount();
  out["avg_us"] = r.averageMicrosPerOp();
  out["classes"] = classes;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Concurrent directed graph with wait-free snapshots";

  py::enum_<SnapshotEngine>(m, "SnapshotEngine")
      .value("COOPERATIVE", SnapshotEngine::Cooperative)
      .value("INDEPENDENT", SnapshotEngine::Independent);

  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t, SnapshotEngine>(), py::arg("max_threads") = 1,
           py::arg("engine") = SnapshotEngine::Cooperative)
      .def("register_thread", &Graph::registerThread)
      .def_property_readonly("max_threads", &Graph::maxThreads)
      .def("add_vertex", [](Graph& g, Key k, Tid t) { return std::string(toString(g.addVertex(k, t))); },
           py::arg("key"), py::arg("tid"), py::call_guard<py::gil_scoped_release>())
      .def("remove_vertex",
           [](Graph& g, Key k, Tid t) { return std::string(toString(g.removeVertex(k, t))); },
           py::arg("key"), py::arg("tid"), py::call_guard<py::gil_scoped_release>())
      .def("contains_vertex",
           [](Graph& g, Key k, Tid t) { return std::string(toString(g.containsVertex(k, t))); },
           py::arg("key"), py::arg("tid"), py::call_guard<py::gil_scoped_release>())
      .def("add_edge",
           [](Graph& g, Key k, Key l, Tid t) { return std::string(toString(g.addEdge(k, l, t))); },
           py::arg("source"), py::arg("dest"), py::arg("tid"), py::call_guard<py::gil_scoped_release>())
      .def("remove_edge",
           [](Graph& g, Key k, Key l, Tid t) { return std::string(toString(g.removeEdge(k, l, t))); },
           py::arg("source"), py::arg("dest"), py::arg("tid"), py::call_guard<py::gil_scoped_release>())
      .def("contains_edge",
           [](Graph& g, Key k, Key l, Tid t) { return std::string(toString(g.containsEdge(k, l, t))); },
           py::arg("source"), py::arg("dest"), py::arg("tid"), py::call_guard<py::gil_scoped_release>())
      .def("snapshot",
           [](Graph& g, Tid t) {
             SnapshotResult s;
             {
               py::gil_scoped_release release;
               s = g.takeSnapshot(t);
             }
             return toDict(s);
           },
           py::arg("tid"));

  m.def("diameter", [](const std::map<Key, std::vector<Key>>& adj) { return diameter(GraphView(fromDict(adj))); },
        py::arg("adjacency"));
  m.def("betweenness",
        [](const std::map<Key, std::vector<Key>>& adj) {
          GraphView g(fromDict(adj));
          Betweenness b = betweennessCentrality(g);
          std::map<Key, double> scores;
          for (std::size_t i = 0; i < g.n(); ++i) scores[g.ids()[i]] = b.scores[i];
          return py::make_tuple(scores, b.argmaxKey);
        },
        py::arg("adjacency"), "Returns (scores by key, argmax key or None).");

  m.def("load_edge_list",
        [](const std::filesystem::path& path) {
          bench::EdgeList e = bench::loadSnapEdgeList(path);
          return py::make_tuple(e.vertices, e.edges);
        },
        py::arg("path"));

  m.def("check_history",
        [](const std::filesystem::path& path, std::size_t budget) {
          auto events = harness::readHistoryFile(path);
          harness::CheckOptions opts;
          opts.nodeBudget = budget;
          harness::CheckResult r;
          {
            py::gil_scoped_release release;
            r = harness::checkLinearizable(events, opts);
          }
          std::ostringstream ce;
          harness::writeHistory(r.counterexample, ce);
          py::dict out;
          out["verdict"] = std::string(toString(r.verdict));
          out["explored"] = r.explored;
          out["detail"] = r.detail;
          out["counterexample"] = ce.str();
          return out;
        },
        py::arg("path"), py::arg("budget") = harness::CheckOptions{}.nodeBudget);

  m.def("run_benchmark", &benchmark, py::arg("threads") = 1, py::arg("duration") = 1.0,
        py::arg("profile") = "read-heavy", py::arg("analytics") = "snapshot",
        py::arg("analytics_pct") = py::none(), py::arg("engine") = "waitfree",
        py::arg("vertices") = 10'000, py::arg("edges") = 20'000, py::arg("seed") = 1,
        py::arg("dataset") = py::none());

  py::register_exception<bench::DatasetError>(m, "DatasetError", PyExc_ValueError);
  py::register_exception<harness::HistoryFormatError>(m, "HistoryFormatError", PyExc_ValueError);
}

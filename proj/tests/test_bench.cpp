#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cgraph/bench/dataset.hpp"
#include "cgraph/bench/metrics.hpp"
#include "cgraph/bench/runner.hpp"
#include "cgraph/bench/workload.hpp"

using namespace cgraph;
using namespace cgraph::bench;

TEST(Workload, PresetMixes) {
  EXPECT_EQ(WorkloadProfile::readHeavy().percent,
            (std::array<int, kOpClassCount>{3, 2, 45, 3, 2, 45, 2}));
  EXPECT_EQ(WorkloadProfile::updateHeavy().percent,
            (std::array<int, kOpClassCount>{12, 13, 25, 13, 12, 25, 2}));
  EXPECT_EQ(WorkloadProfile::byName("update-heavy"), WorkloadProfile::updateHeavy());
  EXPECT_FALSE(WorkloadProfile::byName("write-only"));
}

TEST(Workload, AnalyticsPercentTakesFromLookupsEqually) {
  auto p = WorkloadProfile::readHeavy().withAnalyticsPercent(10);
  EXPECT_EQ(p.percent, (std::array<int, kOpClassCount>{3, 2, 41, 3, 2, 41, 10}));
  auto odd = WorkloadProfile::updateHeavy().withAnalyticsPercent(5);
  EXPECT_EQ(odd.percent, (std::array<int, kOpClassCount>{12, 13, 23, 13, 12, 24, 5}));
  EXPECT_EQ(WorkloadProfile::readHeavy().withAnalyticsPercent(2), WorkloadProfile::readHeavy());
  EXPECT_EQ(p.total(), WorkloadProfile::readHeavy().total());
  EXPECT_THROW(WorkloadProfile::updateHeavy().withAnalyticsPercent(60), std::invalid_argument);
  EXPECT_THROW(WorkloadProfile::readHeavy().withAnalyticsPercent(-1), std::invalid_argument);
}

TEST(Workload, Validation) {
  WorkloadProfile zero{};
  EXPECT_THROW(zero.validate(), std::invalid_argument);
  WorkloadProfile negative{{-1, 0, 101, 0, 0, 0, 0}};
  EXPECT_THROW(negative.validate(), std::invalid_argument);
  EXPECT_THROW(OperationGenerator(WorkloadProfile::readHeavy(), 1, 0, 0), std::invalid_argument);
}

TEST(Workload, SameSeedSameStream) {
  OperationGenerator a(WorkloadProfile::updateHeavy(), 100, 42, 3);
  OperationGenerator b(WorkloadProfile::updateHeavy(), 100, 42, 3);
  OperationGenerator c(WorkloadProfile::updateHeavy(), 100, 42, 4);
  bool differs = false;
  for (int i = 0; i < 10000; ++i) {
    auto x = a.next();
    ASSERT_EQ(x, b.next());
    differs |= !(x == c.next());
  }
  EXPECT_TRUE(differs);
}

TEST(Workload, KeysInRangeAndEdgesDistinct) {
  OperationGenerator gen(WorkloadProfile::updateHeavy(), 5, 1, 0);
  for (int i = 0; i < 20000; ++i) {
    auto op = gen.next();
    if (op.cls == OpClass::Analytics) continue;
    ASSERT_GE(op.a, 0);
    ASSERT_LT(op.a, 5);
    if (op.cls == OpClass::AddEdge || op.cls == OpClass::RemoveEdge ||
        op.cls == OpClass::ContainsEdge) {
      ASSERT_NE(op.a, op.b);
      ASSERT_GE(op.b, 0);
      ASSERT_LT(op.b, 5);
    }
  }
}

TEST(Workload, FrequenciesFollowWeights) {
  for (auto profile : {WorkloadProfile::readHeavy(), WorkloadProfile::updateHeavy(),
                       WorkloadProfile::readHeavy().withAnalyticsPercent(10)}) {
    OperationGenerator gen(profile, 1000, 9, 1);
    std::array<int, kOpClassCount> counts{};
    constexpr int kDraws = 200000;
    for (int i = 0; i < kDraws; ++i) ++counts[static_cast<std::size_t>(gen.next().cls)];
    for (std::size_t c = 0; c < kOpClassCount; ++c) {
      EXPECT_NEAR(static_cast<double>(counts[c]) / kDraws, profile.share(static_cast<OpClass>(c)),
                  0.005);
    }
  }
}

TEST(Dataset, ParsesCommentsAndTabs) {
  std::stringstream in("# comment\n0\t1\n1\t2\n");
  EdgeList e = parseSnapEdgeList(in);
  EXPECT_EQ(e.vertices, (std::vector<Key>{0, 1, 2}));
  EXPECT_EQ(e.edges, (std::vector<std::pair<Key, Key>>{{0, 1}, {1, 2}}));
}

TEST(Dataset, DeduplicatesEdges) {
  std::stringstream in("0\t1\n0\t1\n0 1\r\n  \n");
  EdgeList e = parseSnapEdgeList(in);
  EXPECT_EQ(e.edges.size(), 1u);
  EXPECT_EQ(e.vertices.size(), 2u);
}

TEST(Dataset, SelfLoopKeepsVertexOnly) {
  std::stringstream in("4 4\n");
  EdgeList e = parseSnapEdgeList(in);
  EXPECT_EQ(e.vertices, (std::vector<Key>{4}));
  EXPECT_TRUE(e.edges.empty());
}

TEST(Dataset, ErrorsCarryLineNumbers) {
  for (auto [text, line] : std::vector<std::pair<std::string, std::size_t>>{
           {"0 1\na b\n", 2}, {"# x\n# y\n5\n", 3}, {"1 2 3\n", 1}, {"1 2x\n", 1}}) {
    std::stringstream in(text);
    try {
      parseSnapEdgeList(in);
      ADD_FAILURE() << "accepted " << text;
    } catch (const DatasetError& e) {
      EXPECT_EQ(e.line(), line);
      EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)), std::string::npos);
    }
  }
}

TEST(Dataset, MissingFileIsError) {
  EXPECT_THROW(loadSnapEdgeList("/nonexistent/graph.txt"), DatasetError);
}

TEST(Metrics, EmptyRecordWritesHeadersOnly) {
  std::ostringstream out;
  emitCsv(MetricsRecord{}, out);
  EXPECT_EQ(out.str(), "metric,value\nclass,count,avg_us\n");
}

TEST(Metrics, ClassRowAverages) {
  MetricsRecord r;
  r[OpClass::ContainsVertex] = {10, 100'000};
  std::ostringstream out;
  emitCsv(r, out);
  EXPECT_NE(out.str().find("\ncontainsVertex,10,10.0\n"), std::string::npos);
  EXPECT_DOUBLE_EQ(r.averageMicrosPerOp(), 10.0);
  EXPECT_EQ(r.totalCount(), 10u);
}

TEST(Metrics, CsvRoundTrips) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::uint64_t> count(0, 1000), nanos(0, 1'000'000'000);
  for (int i = 0; i < 200; ++i) {
    MetricsRecord r;
    r.analytics = static_cast<AnalyticsKind>(i % 3);
    for (auto& c : r.classes) {
      c.count = count(rng) % 3 == 0 ? 0 : count(rng);
      c.totalNanos = c.count ? nanos(rng) : 0;
    }
    if (r.empty()) r.analytics = AnalyticsKind::Snapshot;
    std::stringstream text;
    emitCsv(r, text);
    EXPECT_EQ(parseCsv(text), r);
  }
}

TEST(Metrics, FileOutput) {
  auto path = std::filesystem::temp_directory_path() / "cgraph_metrics_test.csv";
  MetricsRecord r;
  r[OpClass::AddEdge] = {2, 5000};
  emitCsv(r, path);
  std::ifstream in(path);
  EXPECT_EQ(parseCsv(in), r);
  std::filesystem::remove(path);
  EXPECT_THROW(emitCsv(r, std::filesystem::path("/nonexistent/dir/x.csv")), std::runtime_error);
}

TEST(Metrics, Merge) {
  MetricsRecord a, b;
  a[OpClass::AddVertex] = {1, 10};
  b[OpClass::AddVertex] = {2, 30};
  b[OpClass::Analytics] = {1, 7};
  a.merge(b);
  EXPECT_EQ(a[OpClass::AddVertex], (ClassMetrics{3, 40}));
  EXPECT_EQ(a[OpClass::Analytics], (ClassMetrics{1, 7}));
}

TEST(Runner, ConfigValidation) {
  BenchConfig cfg;
  cfg.threads = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.durationSeconds = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.initialVertices = 10;
  cfg.keySpace = 5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.initialVertices = 3;
  cfg.initialEdges = 7;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_EQ(parseEngineKind("baseline"), EngineKind::Baseline);
  EXPECT_FALSE(parseEngineKind("fast"));
}

TEST(Runner, PopulateCreatesRequestedGraph) {
  BenchConfig cfg;
  cfg.initialVertices = 200;
  cfg.initialEdges = 500;
  Graph g(1);
  Tid t = g.registerThread();
  EXPECT_EQ(populate(g, cfg, t), 400);
  auto s = g.readQuiescent();
  EXPECT_EQ(s.vertices.size(), 200u);
  EXPECT_EQ(s.edgeCount(), 500u);
  EXPECT_GE(s.vertices.front(), 0);
  EXPECT_LT(s.vertices.back(), 400);
}

TEST(Runner, DegenerateProfileOnlyRunsOneClass) {
  BenchConfig cfg;
  cfg.threads = 1;
  cfg.durationSeconds = 0.2;
  cfg.initialVertices = 100;
  cfg.initialEdges = 200;
  cfg.profile = WorkloadProfile{{0, 0, 100, 0, 0, 0, 0}};
  MetricsRecord r = runBenchmark(cfg);
  EXPECT_GT(r[OpClass::ContainsVertex].count, 0u);
  EXPECT_EQ(r.totalCount(), r[OpClass::ContainsVertex].count);
}

TEST(Runner, BothEnginesRunEveryAnalytics) {
  for (EngineKind engine : {EngineKind::WaitFree, EngineKind::Baseline}) {
    for (AnalyticsKind kind :
         {AnalyticsKind::Snapshot, AnalyticsKind::Diameter, AnalyticsKind::Betweenness}) {
      BenchConfig cfg;
      cfg.threads = 3;
      cfg.durationSeconds = 0.2;
      cfg.initialVertices = 60;
      cfg.initialEdges = 120;
      cfg.engine = engine;
      cfg.analytics = kind;
      cfg.profile = WorkloadProfile::updateHeavy().withAnalyticsPercent(20);
      MetricsRecord r = runBenchmark(cfg);
      EXPECT_GT(r[OpClass::Analytics].count, 0u);
      EXPECT_GT(r[OpClass::AddVertex].count, 0u);
      EXPECT_EQ(r.analytics, kind);
    }
  }
}

TEST(Runner, LoadsDataset) {
  auto path = std::filesystem::temp_directory_path() / "cgraph_runner_dataset.txt";
  {
    std::ofstream out(path);
    out << "# tiny\n0\t1\n1\t2\n2\t0\n";
  }
  BenchConfig cfg;
  cfg.datasetPath = path;
  Graph g(1);
  Tid t = g.registerThread();
  EXPECT_EQ(populate(g, cfg, t), 3);
  EXPECT_EQ(g.readQuiescent().edgeCount(), 3u);
  std::filesystem::remove(path);
}

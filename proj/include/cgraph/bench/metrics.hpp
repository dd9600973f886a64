#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "cgraph/bench/workload.hpp"

namespace cgraph::bench {

struct ClassMetrics {
  std::uint64_t count = 0;
  std::uint64_t totalNanos = 0;

  double averageMicros() const noexcept {
    return count ? static_cast<double>(totalNanos) / 1000.0 / static_cast<double>(count) : 0.0;
  }
  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

struct MetricsRecord {
  std::array<ClassMetrics, kOpClassCount> classes{};
  AnalyticsKind analytics = AnalyticsKind::Snapshot;

  ClassMetrics& operator[](OpClass c) { return classes[static_cast<std::size_t>(c)]; }
  const ClassMetrics& operator[](OpClass c) const { return classes[static_cast<std::size_t>(c)]; }

  void add(OpClass c, std::uint64_t nanos) {
    auto& m = (*this)[c];
    ++m.count;
    m.totalNanos += nanos;
  }
  void merge(const MetricsRecord& other);

  std::uint64_t totalCount() const noexcept;
  bool empty() const noexcept { return totalCount() == 0; }
  double averageMicrosPerOp() const noexcept;

  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

// Layout:
//   metric,value
//   analytics,<snapshot|diameter|bc>
//   total_ops,<n>
//   avg_us,<x.x>
//   <class>.total_ns,<n>        (one per class with count > 0)
//   class,count,avg_us
//   <class>,<count>,<avg.1f>    (one per class with count > 0)
// Rows follow the fixed class order. An empty record writes only the two
// header lines.
void emitCsv(const MetricsRecord& record, std::ostream& out);
void emitCsv(const MetricsRecord& record, const std::filesystem::path& path);
MetricsRecord parseCsv(std::istream& in);

}  // namespace cgraph::bench

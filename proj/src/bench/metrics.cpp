#include "cgraph/bench/metrics.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cgraph::bench {

void MetricsRecord::merge(const MetricsRecord& other) {
  for (std::size_t i = 0; i < kOpClassCount; ++i) {
    classes[i].count += other.classes[i].count;
    classes[i].totalNanos += other.classes[i].totalNanos;
  }
}

std::uint64_t MetricsRecord::totalCount() const noexcept {
  std::uint64_t n = 0;
  for (const auto& c : classes) n += c.count;
  return n;
}

double MetricsRecord::averageMicrosPerOp() const noexcept {
  std::uint64_t n = 0, ns = 0;
  for (const auto& c : classes) {
    n += c.count;
    ns += c.totalNanos;
  }
  return n ? static_cast<double>(ns) / 1000.0 / static_cast<double>(n) : 0.0;
}

namespace {

std::string fixed1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::uint64_t toU64(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::invalid_argument("csv line " + std::to_string(line) + ": bad integer '" +
                                std::string(s) + "'");
  }
  return v;
}

}  // namespace

void emitCsv(const MetricsRecord& record, std::ostream& out) {
  out << "metric,value\n";
  if (!record.empty()) {
    out << "analytics," << toString(record.analytics) << '\n';
    out << "total_ops," << record.totalCount() << '\n';
    out << "avg_us," << fixed1(record.averageMicrosPerOp()) << '\n';
    for (std::size_t i = 0; i < kOpClassCount; ++i) {
      const auto& c = record.classes[i];
      if (c.count == 0) continue;
      out << toString(static_cast<OpClass>(i)) << ".total_ns," << c.totalNanos << '\n';
    }
  }
  out << "class,count,avg_us\n";
  for (std::size_t i = 0; i < kOpClassCount; ++i) {
    const auto& c = record.classes[i];
    if (c.count == 0) continue;
    out << toString(static_cast<OpClass>(i)) << ',' << c.count << ',' << fixed1(c.averageMicros())
        << '\n';
  }
}

void emitCsv(const MetricsRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emitCsv(record, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

MetricsRecord parseCsv(std::istream& in) {
  MetricsRecord record;
  enum { Start, Metrics, Classes } section = Start;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "metric,value") {
      section = Metrics;
      continue;
    }
    if (line == "class,count,avg_us") {
      section = Classes;
      continue;
    }
    const auto comma = line.find(',');
    if (section == Start || comma == std::string::npos) {
      throw std::invalid_argument("csv line " + std::to_string(lineNo) + ": unexpected row");
    }
    const std::string_view name(line.data(), comma);
    const std::string_view rest(line.data() + comma + 1, line.size() - comma - 1);
    if (section == Metrics) {
      if (name == "analytics") {
        auto k = parseAnalyticsKind(rest);
        if (!k) throw std::invalid_argument("csv line " + std::to_string(lineNo) + ": bad analytics");
        record.analytics = *k;
      } else if (name.size() > 9 && name.substr(name.size() - 9) == ".total_ns") {
        auto c = parseOpClass(name.substr(0, name.size() - 9));
        if (!c) throw std::invalid_argument("csv line " + std::to_string(lineNo) + ": bad class");
        record[*c].totalNanos = toU64(rest, lineNo);
      }
      // total_ops and avg_us are derived and not read back.
    } else {
      auto c = parseOpClass(name);
      const auto comma2 = rest.find(',');
      if (!c || comma2 == std::string_view::npos) {
        throw std::invalid_argument("csv line " + std::to_string(lineNo) + ": bad class row");
      }
      record[*c].count = toU64(rest.substr(0, comma2), lineNo);
    }
  }
  return record;
}

}  // namespace cgraph::bench

#include "cgraph/harness/history.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cgraph/analytics.hpp"

namespace cgraph::harness {

namespace {

Key parseKey(std::string_view s) {
  Key k = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::invalid_argument("bad key '" + std::string(s) + "'");
  }
  return k;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

SnapshotResult parseSnapshot(std::string_view s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    throw std::invalid_argument("snapshot value must be braced");
  }
  s = s.substr(1, s.size() - 2);
  SnapshotResult out;
  if (s.empty()) return out;
  for (auto entry : split(s, ';')) {
    auto colon = entry.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("snapshot entry lacks ':'");
    out.vertices.push_back(parseKey(entry.substr(0, colon)));
    auto& row = out.adjacency.emplace_back();
    auto dests = entry.substr(colon + 1);
    if (!dests.empty()) {
      for (auto d : split(dests, ',')) row.push_back(parseKey(d));
    }
  }
  return out;
}

}  // namespace

HistoryRecorder::HistoryRecorder(std::size_t maxThreads) : perThread_(maxThreads) {}

void HistoryRecorder::invoke(Tid tid, const Op& op) {
  HistoryEvent e;
  e.ts = clock_.fetch_add(1);
  e.tid = tid;
  e.kind = EventKind::Invoke;
  e.op = op;
  perThread_.at(tid).push_back(std::move(e));
}

void HistoryRecorder::respond(Tid tid, const Op& op, OpValue value) {
  HistoryEvent e;
  e.ts = clock_.fetch_add(1);
  e.tid = tid;
  e.kind = EventKind::Response;
  e.op = Op{op.kind};
  e.value = std::move(value);
  perThread_.at(tid).push_back(std::move(e));
}

std::vector<HistoryEvent> HistoryRecorder::events() const {
  std::vector<HistoryEvent> all;
  for (const auto& v : perThread_) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(),
            [](const HistoryEvent& a, const HistoryEvent& b) { return a.ts < b.ts; });
  return all;
}

OpValue parseValue(OpKind kind, const std::string& text) {
  switch (kind) {
    case OpKind::Snap:
      return parseSnapshot(text);
    case OpKind::Diameter: {
      Key hops = parseKey(text);
      if (hops < 0) throw std::invalid_argument("negative diameter");
      return DiameterValue{static_cast<std::uint32_t>(hops)};
    }
    case OpKind::Betweenness:
      if (text == "none") return CentralityValue{};
      return CentralityValue{parseKey(text)};
    default: {
      OpResult r;
      if (!parseOpResult(text, r)) throw std::invalid_argument("unknown result '" + text + "'");
      return r;
    }
  }
}

void writeHistory(const std::vector<HistoryEvent>& events, std::ostream& out) {
  for (const auto& e : events) {
    out << e.ts << ' ' << e.tid << ' ' << (e.kind == EventKind::Invoke ? "invoke" : "resp") << ' '
        << toString(e.op.kind);
    if (e.kind == EventKind::Invoke) {
      const int n = arity(e.op.kind);
      if (n >= 1) out << ' ' << e.op.a;
      if (n == 2) out << ' ' << e.op.b;
    } else {
      out << ' ' << (e.value ? formatValue(*e.value) : std::string("?"));
    }
    out << '\n';
  }
}

std::vector<HistoryEvent> readHistory(std::istream& in) {
  std::vector<HistoryEvent> events;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string ts, tid, kind, op;
    if (!(fields >> ts >> tid >> kind >> op)) throw HistoryFormatError(lineNo, "too few fields");
    HistoryEvent e;
    try {
      Key t = parseKey(ts);
      Key th = parseKey(tid);
      if (t < 0 || th < 0) throw std::invalid_argument("negative timestamp or tid");
      e.ts = static_cast<std::uint64_t>(t);
      e.tid = static_cast<Tid>(th);
      auto k = parseOpKind(op);
      if (!k) throw std::invalid_argument("unknown operation '" + op + "'");
      e.op.kind = *k;
      std::string rest;
      if (kind == "invoke") {
        e.kind = EventKind::Invoke;
        const int n = arity(*k);
        std::string a, b;
        if (n >= 1 && !(fields >> a)) throw std::invalid_argument("missing argument");
        if (n == 2 && !(fields >> b)) throw std::invalid_argument("missing argument");
        if (n >= 1) e.op.a = parseKey(a);
        if (n == 2) e.op.b = parseKey(b);
      } else if (kind == "resp") {
        e.kind = EventKind::Response;
        std::string value;
        if (!(fields >> value)) throw std::invalid_argument("missing response value");
        e.value = parseValue(*k, value);
      } else {
        throw std::invalid_argument("event kind must be invoke or resp");
      }
      if (fields >> rest) throw std::invalid_argument("trailing fields");
    } catch (const std::invalid_argument& err) {
      throw HistoryFormatError(lineNo, err.what());
    }
    events.push_back(std::move(e));
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const HistoryEvent& a, const HistoryEvent& b) { return a.ts < b.ts; });
  return events;
}

OpValue runOp(Graph& graph, const Op& op, Tid tid) {
  switch (op.kind) {
    case OpKind::AddVertex:
      return graph.addVertex(op.a, tid);
    case OpKind::RemoveVertex:
      return graph.removeVertex(op.a, tid);
    case OpKind::ContainsVertex:
      return graph.containsVertex(op.a, tid);
    case OpKind::AddEdge:
      return graph.addEdge(op.a, op.b, tid);
    case OpKind::RemoveEdge:
      return graph.removeEdge(op.a, op.b, tid);
    case OpKind::ContainsEdge:
      return graph.containsEdge(op.a, op.b, tid);
    case OpKind::Snap:
      return graph.takeSnapshot(tid);
    case OpKind::Diameter:
      return DiameterValue{diameter(snap(graph, tid))};
    case OpKind::Betweenness:
      return CentralityValue{betweennessCentrality(snap(graph, tid)).argmaxKey};
  }
  throw std::invalid_argument("unknown operation kind");
}

OpValue recordOp(HistoryRecorder& recorder, Graph& graph, const Op& op, Tid tid) {
  recorder.invoke(tid, op);
  OpValue v = runOp(graph, op, tid);
  recorder.respond(tid, op, v);
  return v;
}

std::vector<HistoryEvent> readHistoryFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return readHistory(in);
}

}  // namespace cgraph::harness

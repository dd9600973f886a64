#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgraph/graph.hpp"
#include "cgraph/harness/model.hpp"
#include "cgraph/thread_registry.hpp"

namespace cgraph::harness {

enum class EventKind : std::uint8_t { Invoke, Response };

struct HistoryEvent {
  std::uint64_t ts = 0;
  Tid tid = 0;
  EventKind kind = EventKind::Invoke;
  Op op;
  std::optional<OpValue> value;  // set on responses only

  friend bool operator==(const HistoryEvent&, const HistoryEvent&) = default;
};

class HistoryFormatError : public std::runtime_error {
 public:
  HistoryFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Timestamps come from one shared counter, so a response stamped before an
// invocation really happened before it.
class HistoryRecorder {
 public:
  explicit HistoryRecorder(std::size_t maxThreads);

  void invoke(Tid tid, const Op& op);
  void respond(Tid tid, const Op& op, OpValue value);

  // Merged events ordered by timestamp. Call only once all threads stopped.
  std::vector<HistoryEvent> events() const;

 private:
  std::atomic<std::uint64_t> clock_{0};
  std::vector<std::vector<HistoryEvent>> perThread_;
};

// Text format, one event per line:
//   <ts> <tid> invoke <op> [a [b]]
//   <ts> <tid> resp <op> <value>
// Snapshot values are written as {k:d,d;k:} and `#` starts a comment line.
void writeHistory(const std::vector<HistoryEvent>& events, std::ostream& out);
std::vector<HistoryEvent> readHistory(std::istream& in);
std::vector<HistoryEvent> readHistoryFile(const std::filesystem::path& path);

OpValue parseValue(OpKind kind, const std::string& text);

// Runs op against the concurrent graph; analytics ops take a snapshot first.
OpValue runOp(Graph& graph, const Op& op, Tid tid);
// runOp bracketed by invoke/response events.
OpValue recordOp(HistoryRecorder& recorder, Graph& graph, const Op& op, Tid tid);

}  // namespace cgraph::harness

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cgraph/types.hpp"

namespace cgraph::bench {

class DatasetError : public std::runtime_error {
 public:
  // line == 0 means the error is not tied to a line (I/O failure).
  DatasetError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct EdgeList {
  std::vector<Key> vertices;                // ascending, unique
  std::vector<std::pair<Key, Key>> edges;   // ascending, unique
};

// SNAP edge-list format: `FromNodeId<ws>ToNodeId` per line, `#` comment
// lines, blank lines ignored. Self-loop lines contribute their vertex only,
// since the graph has no self-loop edges.
EdgeList parseSnapEdgeList(std::istream& in);
EdgeList loadSnapEdgeList(const std::filesystem::path& path);

}  // namespace cgraph::bench

#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace cgraph {

using Key = std::int64_t;

// Reserved for the list sentinels; user keys must lie strictly between them.
inline constexpr Key kNegInfKey = std::numeric_limits<Key>::min();
inline constexpr Key kPosInfKey = std::numeric_limits<Key>::max();

inline constexpr bool isUserKey(Key k) noexcept { return k != kNegInfKey && k != kPosInfKey; }

enum class OpResult : std::uint8_t {
  VertexAdded,
  VertexAlreadyPresent,
  VertexRemoved,
  VertexNotPresent,
  VertexPresent,
  EdgeAdded,
  EdgePresent,
  EdgeRemoved,
  EdgeNotPresent,
  EdgeFound,
};

std::string_view toString(OpResult r) noexcept;
bool parseOpResult(std::string_view text, OpResult& out) noexcept;

// EDGE_FOUND and EDGE_PRESENT are the same observable outcome.
inline constexpr OpResult canonical(OpResult r) noexcept {
  return r == OpResult::EdgeFound ? OpResult::EdgePresent : r;
}

inline constexpr bool sameOutcome(OpResult a, OpResult b) noexcept {
  return canonical(a) == canonical(b);
}

enum class ReportAction : std::uint8_t { Insert, Delete };

// A consistent view of the whole graph. adjacency[i] holds the sorted
// destination keys of the edges leaving vertices[i].
struct SnapshotResult {
  std::vector<Key> vertices;
  std::vector<std::vector<Key>> adjacency;

  std::size_t edgeCount() const noexcept {
    std::size_t m = 0;
    for (const auto& a : adjacency) m += a.size();
    return m;
  }

  friend bool operator==(const SnapshotResult&, const SnapshotResult&) = default;
};

}  // namespace cgraph

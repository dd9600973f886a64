#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cgraph/types.hpp"

namespace cgraph::harness {

enum class OpKind : std::uint8_t {
  AddVertex,
  RemoveVertex,
  ContainsVertex,
  AddEdge,
  RemoveEdge,
  ContainsEdge,
  Snap,
  Diameter,
  Betweenness,
};

std::string_view toString(OpKind kind) noexcept;
std::optional<OpKind> parseOpKind(std::string_view name) noexcept;
// Number of key arguments the operation takes (0, 1 or 2).
int arity(OpKind kind) noexcept;

struct Op {
  OpKind kind = OpKind::Snap;
  Key a = 0;
  Key b = 0;

  friend bool operator==(const Op&, const Op&) = default;
};

struct DiameterValue {
  std::uint32_t hops = 0;
  friend bool operator==(const DiameterValue&, const DiameterValue&) = default;
};

struct CentralityValue {
  std::optional<Key> argmaxKey;
  friend bool operator==(const CentralityValue&, const CentralityValue&) = default;
};

using OpValue = std::variant<OpResult, SnapshotResult, DiameterValue, CentralityValue>;

// Point-operation outcomes compare modulo the EDGE_FOUND/EDGE_PRESENT synonym.
bool sameValue(const OpValue& a, const OpValue& b);
std::string formatValue(const OpValue& v);

// The sequential graph the concurrent one must be equivalent to.
class SeqGraphModel {
 public:
  // Throws std::invalid_argument for malformed operations (reserved keys,
  // self-loops).
  OpValue apply(const Op& op);

  SnapshotResult state() const;
  const std::map<Key, std::set<Key>>& adjacency() const noexcept { return adj_; }

  // Compact canonical encoding, used as a memo key by the checker.
  void encode(std::string& out) const;

  friend bool operator==(const SeqGraphModel&, const SeqGraphModel&) = default;

 private:
  std::map<Key, std::set<Key>> adj_;
};

std::pair<OpValue, SeqGraphModel> seqApply(SeqGraphModel model, const Op& op);

}  // namespace cgraph::harness

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "cgraph/types.hpp"

namespace cgraph::bench {

enum class OpClass : std::uint8_t {
  AddVertex,
  RemoveVertex,
  ContainsVertex,
  AddEdge,
  RemoveEdge,
  ContainsEdge,
  Analytics,
};
inline constexpr std::size_t kOpClassCount = 7;

enum class AnalyticsKind : std::uint8_t { Snapshot, Diameter, Betweenness };

std::string_view toString(OpClass c) noexcept;
std::optional<OpClass> parseOpClass(std::string_view name) noexcept;
std::string_view toString(AnalyticsKind k) noexcept;
std::optional<AnalyticsKind> parseAnalyticsKind(std::string_view name) noexcept;

// Integer weights per operation class, drawn with probability weight/total.
// The preset mixes add up to 102, so weights are not required to sum to 100.
struct WorkloadProfile {
  std::array<int, kOpClassCount> percent{};

  static WorkloadProfile readHeavy();
  static WorkloadProfile updateHeavy();
  static std::optional<WorkloadProfile> byName(std::string_view name);

  // Moves the analytics share to `pct`, taking the difference out of the two
  // lookup classes equally (containsVertex absorbs an odd unit). Throws
  // std::invalid_argument if the lookups cannot absorb it.
  WorkloadProfile withAnalyticsPercent(int pct) const;

  // Non-negative weights with a positive total.
  void validate() const;
  int total() const;
  double share(OpClass c) const { return static_cast<double>((*this)[c]) / total(); }
  int operator[](OpClass c) const { return percent[static_cast<std::size_t>(c)]; }

  friend bool operator==(const WorkloadProfile&, const WorkloadProfile&) = default;
};

struct GeneratedOp {
  OpClass cls = OpClass::ContainsVertex;
  Key a = 0;
  Key b = 0;

  friend bool operator==(const GeneratedOp&, const GeneratedOp&) = default;
};

// Deterministic per-worker operation stream. Keys are uniform in
// [0, keySpace); edge operations never produce self-loops.
class OperationGenerator {
 public:
  OperationGenerator(const WorkloadProfile& profile, Key keySpace, std::uint64_t seed,
                     std::uint64_t worker);

  GeneratedOp next();

 private:
  std::array<int, kOpClassCount> cumulative_{};
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> pct_;
  std::uniform_int_distribution<Key> key_;
};

}  // namespace cgraph::bench

#include "cgraph/bench/workload.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace cgraph::bench {

namespace {
constexpr std::string_view kClassNames[] = {"addVertex",  "removeVertex", "containsVertex",
                                            "addEdge",    "removeEdge",   "containsEdge",
                                            "analytics"};
constexpr std::string_view kAnalyticsNames[] = {"snapshot", "diameter", "bc"};

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker), static_cast<std::uint32_t>(worker >> 32)};
  return std::mt19937_64(seq);
}
}  // namespace

std::string_view toString(OpClass c) noexcept { return kClassNames[static_cast<int>(c)]; }

std::optional<OpClass> parseOpClass(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kOpClassCount; ++i) {
    if (kClassNames[i] == name) return static_cast<OpClass>(i);
  }
  return std::nullopt;
}

std::string_view toString(AnalyticsKind k) noexcept { return kAnalyticsNames[static_cast<int>(k)]; }

std::optional<AnalyticsKind> parseAnalyticsKind(std::string_view name) noexcept {
  for (int i = 0; i < 3; ++i) {
    if (kAnalyticsNames[i] == name) return static_cast<AnalyticsKind>(i);
  }
  return std::nullopt;
}

WorkloadProfile WorkloadProfile::readHeavy() { return {{3, 2, 45, 3, 2, 45, 2}}; }
WorkloadProfile WorkloadProfile::updateHeavy() { return {{12, 13, 25, 13, 12, 25, 2}}; }

std::optional<WorkloadProfile> WorkloadProfile::byName(std::string_view name) {
  if (name == "read-heavy") return readHeavy();
  if (name == "update-heavy") return updateHeavy();
  return std::nullopt;
}

WorkloadProfile WorkloadProfile::withAnalyticsPercent(int pct) const {
  if (pct < 0 || pct > 100) throw std::invalid_argument("analytics percentage must be in [0, 100]");
  WorkloadProfile out = *this;
  const int delta = pct - (*this)[OpClass::Analytics];
  auto& cv = out.percent[static_cast<std::size_t>(OpClass::ContainsVertex)];
  auto& ce = out.percent[static_cast<std::size_t>(OpClass::ContainsEdge)];
  const int half = delta / 2;
  cv -= delta - half;
  ce -= half;
  out.percent[static_cast<std::size_t>(OpClass::Analytics)] = pct;
  if (cv < 0 || ce < 0) {
    throw std::invalid_argument("analytics percentage " + std::to_string(pct) +
                                " exceeds what the lookup classes can give up");
  }
  out.validate();
  return out;
}

void WorkloadProfile::validate() const {
  for (int p : percent) {
    if (p < 0) throw std::invalid_argument("negative workload percentage");
  }
  if (total() <= 0) throw std::invalid_argument("workload weights must not all be zero");
}

int WorkloadProfile::total() const { return std::accumulate(percent.begin(), percent.end(), 0); }

OperationGenerator::OperationGenerator(const WorkloadProfile& profile, Key keySpace,
                                       std::uint64_t seed, std::uint64_t worker)
    : rng_(seeded(seed, worker)) {
  profile.validate();
  if (keySpace < 2) throw std::invalid_argument("key space must hold at least two keys");
  pct_ = std::uniform_int_distribution<int>(0, profile.total() - 1);
  key_ = std::uniform_int_distribution<Key>(0, keySpace - 1);
  std::partial_sum(profile.percent.begin(), profile.percent.end(), cumulative_.begin());
}

GeneratedOp OperationGenerator::next() {
  const int r = pct_(rng_);
  std::size_t c = 0;
  while (r >= cumulative_[c]) ++c;
  GeneratedOp op;
  op.cls = static_cast<OpClass>(c);
  switch (op.cls) {
    case OpClass::AddVertex:
    case OpClass::RemoveVertex:
    case OpClass::ContainsVertex:
      op.a = key_(rng_);
      break;
    case OpClass::AddEdge:
    case OpClass::RemoveEdge:
    case OpClass::ContainsEdge:
      op.a = key_(rng_);
      do {
        op.b = key_(rng_);
      } while (op.b == op.a);
      break;
    case OpClass::Analytics:
      break;
  }
  return op;
}

}  // namespace cgraph::bench
